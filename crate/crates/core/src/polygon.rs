//! The Archimedean Newton polygon of `f(z) = F(z, 1)`: the lower convex hull of
//! `P_i = (r_i, -ln|a_i|)`.
//!
//! Hull membership and slope ordering are decided with integer powers, never
//! with floating logarithms.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::pow;

use crate::error::Error;
use crate::forms::SparseForm;
use crate::interval::Interval;

/// The slope `(ln left - ln right) / run` of a hull edge, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSlope {
    pub left: BigUint,
    pub right: BigUint,
    pub run: u32,
}

impl LogSlope {
    pub fn value(&self) -> Interval {
        (Interval::ln_biguint(&self.left) - Interval::ln_biguint(&self.right))
            / Interval::from_i64(self.run as i64)
    }

    /// Exact comparison: `ln(l1/r1)/w1` against `ln(l2/r2)/w2`.
    pub fn cmp_exact(&self, other: &LogSlope) -> Ordering {
        let w1 = self.run as usize;
        let w2 = other.run as usize;
        let lhs = pow(self.left.clone(), w2) * pow(other.right.clone(), w1);
        let rhs = pow(other.left.clone(), w1) * pow(self.right.clone(), w2);
        lhs.cmp(&rhs)
    }

    /// Slope of the edge read in the opposite direction (as in the reversed form).
    pub fn negated(&self) -> LogSlope {
        LogSlope {
            left: self.right.clone(),
            right: self.left.clone(),
            run: self.run,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    /// Term indices `i(0) = 0 < i(1) < ... < i(l) = s`.
    vertices: Vec<usize>,
    /// `slopes[k - 1] = σ(i(k))`, the slope of the edge ending at `i(k)`.
    slopes: Vec<LogSlope>,
    q: usize,
}

/// The pair `(k(α), K(α))` for one root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootPolygonIndices {
    pub upper: usize,
    pub lower: usize,
    pub log_modulus: Interval,
}

/// `P_j` lies strictly below the chord `P_i P_k` (with `i < j < k`).
fn strictly_below(a: &[BigUint], r: &[u32], i: usize, j: usize, k: usize) -> bool {
    let lhs = pow(a[j].clone(), (r[k] - r[i]) as usize);
    let rhs = pow(a[i].clone(), (r[k] - r[j]) as usize) * pow(a[k].clone(), (r[j] - r[i]) as usize);
    lhs > rhs
}

impl NewtonPolygon {
    pub fn build(form: &SparseForm) -> Self {
        let a = form.abs_coeffs();
        let r = form.exponents();
        let mut hull: Vec<usize> = Vec::with_capacity(a.len());
        for k in 0..a.len() {
            while hull.len() >= 2 {
                let i = hull[hull.len() - 2];
                let j = hull[hull.len() - 1];
                if strictly_below(&a, &r, i, j, k) {
                    break;
                }
                hull.pop();
            }
            hull.push(k);
        }
        let slopes = hull
            .windows(2)
            .map(|w| LogSlope {
                left: a[w[0]].clone(),
                right: a[w[1]].clone(),
                run: r[w[1]] - r[w[0]],
            })
            .collect();
        let h = a.iter().max().unwrap();
        let q = a.iter().position(|x| x == h).unwrap();
        NewtonPolygon {
            vertices: hull,
            slopes,
            q,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `l`, the number of edges.
    pub fn edge_count(&self) -> usize {
        self.slopes.len()
    }

    /// `i(k)`.
    pub fn vertex(&self, k: usize) -> usize {
        self.vertices[k]
    }

    /// `σ(i(k))` for `1 <= k <= l`.
    pub fn slope_into(&self, k: usize) -> &LogSlope {
        &self.slopes[k - 1]
    }

    /// `σ⁺(i(k)) = σ(i(k + 1))` for `0 <= k < l`.
    pub fn slope_out(&self, k: usize) -> &LogSlope {
        &self.slopes[k]
    }

    pub fn slopes(&self) -> &[LogSlope] {
        &self.slopes
    }

    /// Smallest index with `|a_q| = H`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// `K(α)` and `k(α)` for a root with the given log-modulus enclosure.
    pub fn indices_for_root(
        &self,
        psi: Interval,
        log_modulus: Interval,
    ) -> Result<RootPolygonIndices, Error> {
        let l = self.edge_count();
        let shift = psi + Interval::ln3();
        let up = log_modulus + shift;
        let down = log_modulus - shift;
        let slope = |k: usize| self.slope_into(k).value();

        // σ(s) < ln|α| + Ψ + ln 3 → K = l; otherwise the least K whose outgoing
        // slope reaches the threshold.
        let upper = if slope(l).certainly_lt(&up) {
            l
        } else if slope(l).certainly_ge(&up) {
            let mut found = None;
            for k in 0..l {
                let s = slope(k + 1);
                if s.certainly_ge(&up) {
                    found = Some(k);
                    break;
                }
                if !s.certainly_lt(&up) {
                    return Err(Error::AmbiguousComparison);
                }
            }
            found.ok_or(Error::AmbiguousComparison)?
        } else {
            return Err(Error::AmbiguousComparison);
        };

        let lower = if slope(1).certainly_gt(&down) {
            0
        } else if slope(1).certainly_le(&down) {
            let mut found = 1;
            for k in 2..=l {
                let s = slope(k);
                if s.certainly_le(&down) {
                    found = k;
                } else if s.certainly_gt(&down) {
                    break;
                } else {
                    return Err(Error::AmbiguousComparison);
                }
            }
            found
        } else {
            return Err(Error::AmbiguousComparison);
        };

        Ok(RootPolygonIndices {
            upper,
            lower,
            log_modulus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(t: &[(i64, u32)]) -> NewtonPolygon {
        NewtonPolygon::build(&SparseForm::from_i64_terms(t).unwrap())
    }

    #[test]
    fn hull_examples() {
        let p = poly(&[(4, 0), (1, 1), (1, 3)]);
        assert_eq!(p.vertices(), &[0, 2]);
        let p = poly(&[(1, 0), (-1, 2), (1, 5), (-1, 9)]);
        assert_eq!(p.vertices(), &[0, 3]);
        assert!(p.slope_into(1).value().contains(0.0));
        let p = poly(&[(1, 0), (8, 1), (1, 3)]);
        assert_eq!(p.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn collinear_points_are_not_vertices() {
        // ln|a_i| = i ln 2 with r_i = i: all on one line.
        let p = poly(&[(1, 0), (2, 1), (4, 2), (8, 3)]);
        assert_eq!(p.vertices(), &[0, 3]);
    }

    #[test]
    fn q_examples() {
        assert_eq!(poly(&[(3, 0), (5, 1), (5, 3)]).q(), 1);
        assert_eq!(poly(&[(7, 0), (1, 3)]).q(), 0);
        assert_eq!(poly(&[(1, 0), (-1, 1), (1, 4)]).q(), 0);
    }

    #[test]
    fn slopes_strictly_increase() {
        let p = poly(&[(1, 0), (8, 1), (50, 3), (3, 7), (1, 9)]);
        for w in p.slopes().windows(2) {
            assert_eq!(w[0].cmp_exact(&w[1]), Ordering::Less);
        }
    }

    #[test]
    fn straight_line_root_indices() {
        let p = poly(&[(1, 0), (-1, 2), (1, 5)]);
        let psi = Interval::new(0.83, 0.84);
        let idx = p.indices_for_root(psi, Interval::new(0.01, 0.02)).unwrap();
        assert_eq!((idx.lower, idx.upper), (0, 1));
    }

    #[test]
    fn two_edge_polygon_small_root() {
        // f = z^3 + 8z + 1: slopes -ln 8 and ln 8 / 2.
        let p = poly(&[(1, 0), (8, 1), (1, 3)]);
        let psi = Interval::ONE;
        let idx = p.indices_for_root(psi, Interval::new(-2.09, -2.08)).unwrap();
        assert_eq!(idx.lower, 0);
        assert!(idx.lower < idx.upper);
        let big = vec![Interval::new(1.03, 1.04)];
        let idx = p.indices_for_root(psi, big[0]).unwrap();
        assert_eq!(idx.upper, 2);
    }

    #[test]
    fn straddling_modulus_is_ambiguous() {
        let p = poly(&[(1, 0), (8, 1), (1, 3)]);
        // threshold sits at σ(i(1)) - Ψ - ln 3 for K-side: pick ln|α| so that
        // -ln 8 ≈ ln|α| + 1 + ln 3
        let t = -libm::log(8.0) - 1.0 - libm::log(3.0);
        let r = p.indices_for_root(Interval::ONE, Interval::new(t - 0.01, t + 0.01));
        assert_eq!(r, Err(Error::AmbiguousComparison));
    }
}
