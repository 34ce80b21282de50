//! Sections of symmetric-operator bundles over the unit sphere (or a planar
//! chart), evaluated in explicit fiber frames.

use nalgebra::Matrix3;

use crate::mesh::Vec3;
use crate::sym2::Sym2Value;

/// Deterministic orthonormal tangent frame at a unit vector `x`:
/// `t₁ = normalize(a × x)` with `a = e₃` unless `|⟨x, e₃⟩| > 0.9`, in which
/// case `a = e₁`; `t₂ = x × t₁`.
pub fn tangent_frame(x: &Vec3) -> (Vec3, Vec3) {
    let a = if x.z.abs() > 0.9 { Vec3::x() } else { Vec3::z() };
    let t1 = a.cross(x).normalize();
    let t2 = x.cross(&t1);
    (t1, t2)
}

/// Tangent frame at `x` obtained by projecting the deterministic frame of
/// `anchor`. Continuous in `x` on the open hemisphere around `anchor`
/// (away from the great circle where the projection degenerates).
pub fn tangent_frame_near(anchor: &Vec3, x: &Vec3) -> (Vec3, Vec3) {
    let x = x.normalize();
    let (a1, _) = tangent_frame(&anchor.normalize());
    let t1 = (a1 - x * a1.dot(&x)).normalize();
    let t2 = x.cross(&t1);
    (t1, t2)
}

/// Compression `[⟨A tᵢ, tⱼ⟩]` of a symmetric ambient operator onto the plane
/// spanned by the orthonormal pair `(t₁, t₂)`.
pub fn compress(a: &Matrix3<f64>, t1: &Vec3, t2: &Vec3) -> Sym2Value {
    let at1 = a * t1;
    let at2 = a * t2;
    Sym2Value::from_matrix(t1.dot(&at1), t1.dot(&at2), t2.dot(&at2))
}

/// A section `s` of symmetric operators on a rank-2 bundle.
///
/// Values depend on the fiber frame; `value_near(anchor, x)` uses a frame
/// that varies continuously for `x` in a neighbourhood of `anchor`, which is
/// all local index and gluing computations need.
pub trait SymmetricSection: Sync {
    fn value_near(&self, anchor: &Vec3, x: &Vec3) -> Sym2Value;

    /// Value in the frame anchored at `x` itself.
    fn value(&self, x: &Vec3) -> Sym2Value {
        self.value_near(x, x)
    }
}

/// Section of `S²(TS²)` given by compressing an ambient symmetric 3×3 field
/// onto tangent planes of the unit sphere.
pub struct TangentSection<F> {
    ambient: F,
}

impl<F> TangentSection<F>
where
    F: Fn(&Vec3) -> Matrix3<f64> + Sync,
{
    pub fn new(ambient: F) -> Self {
        Self { ambient }
    }
}

impl<F> SymmetricSection for TangentSection<F>
where
    F: Fn(&Vec3) -> Matrix3<f64> + Sync,
{
    fn value_near(&self, anchor: &Vec3, x: &Vec3) -> Sym2Value {
        let xn = x.normalize();
        let (t1, t2) = tangent_frame_near(anchor, &xn);
        compress(&(self.ambient)(&xn), &t1, &t2)
    }
}

/// Section of a trivial bundle: one global frame, values given directly.
pub struct TrivialSection<F> {
    values: F,
}

impl<F> TrivialSection<F>
where
    F: Fn(&Vec3) -> Sym2Value + Sync,
{
    pub fn new(values: F) -> Self {
        Self { values }
    }
}

impl<F> SymmetricSection for TrivialSection<F>
where
    F: Fn(&Vec3) -> Sym2Value + Sync,
{
    fn value_near(&self, _anchor: &Vec3, x: &Vec3) -> Sym2Value {
        (self.values)(x)
    }
}
