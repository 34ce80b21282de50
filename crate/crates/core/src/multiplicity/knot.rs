//! Torus-knot type of a multiplicity curve.

use serde::Serialize;

/// The `(p, q)` torus knot or link traced in the solid torus over a singular
/// circle. Over a component with winding `m` it is `(2, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnotType {
    pub p: i64,
    pub q: i64,
    /// Number of connected components of the curve.
    pub components: usize,
    pub connected: bool,
}

impl KnotType {
    /// Canonical `(2, m)` curve `(t, mt/2)` and its π-shifted partner, sampled
    /// at `samples` base angles per strand; angles in `[0, 2π)`.
    pub fn polyline(&self, samples: usize) -> Vec<Vec<[f64; 2]>> {
        use std::f64::consts::{PI, TAU};
        let turns = if self.connected { 2 } else { 1 };
        let strand = |shift: f64| -> Vec<[f64; 2]> {
            (0..samples * turns)
                .map(|k| {
                    let t = TAU * k as f64 / samples as f64;
                    [t.rem_euclid(TAU), (0.5 * self.q as f64 * t + shift).rem_euclid(TAU)]
                })
                .collect()
        };
        if self.connected {
            vec![strand(0.0)]
        } else {
            vec![strand(0.0), strand(PI)]
        }
    }
}

/// `(2, m)`; connected iff `m` is odd.
pub fn knot_type(winding: i64) -> KnotType {
    let connected = winding.rem_euclid(2) == 1;
    KnotType {
        p: 2,
        q: winding,
        components: if connected { 1 } else { 2 },
        connected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_decides_connectedness() {
        for m in -5..=5 {
            let k = knot_type(m);
            assert_eq!((k.p, k.q), (2, m));
            assert_eq!(k.connected, m % 2 != 0);
            assert_eq!(k.components, if m % 2 != 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn polyline_strands() {
        assert_eq!(knot_type(3).polyline(10).len(), 1);
        assert_eq!(knot_type(3).polyline(10)[0].len(), 20);
        assert_eq!(knot_type(2).polyline(10).len(), 2);
        // m = 0: two parallel strands at fiber angles 0 and π
        let p = knot_type(0).polyline(4);
        assert!(p[0].iter().all(|v| v[1] == 0.0));
        assert!(p[1].iter().all(|v| (v[1] - std::f64::consts::PI).abs() < 1e-15));
    }
}
