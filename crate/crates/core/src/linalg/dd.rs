//! Incremental double description: H-representation to extreme rays.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{clear_denominators, dot_int, int_rank, primitive, LinalgError, Rational};

/// The closed halfspace `{w : normal . w >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    normal: Vec<Rational>,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>) -> Result<Self, LinalgError> {
        if normal.iter().all(Zero::is_zero) {
            return Err(LinalgError::ZeroNormal);
        }
        Ok(Self { normal })
    }

    pub fn from_integers(normal: &[BigInt]) -> Result<Self, LinalgError> {
        Self::new(
            normal
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Primitive integer normal defining the same halfspace.
    pub fn integer_normal(&self) -> Vec<BigInt> {
        clear_denominators(&self.normal)
    }

    pub fn contains(&self, w: &[Rational]) -> bool {
        !super::dot_rat(&self.normal, w).is_negative()
    }

    pub fn is_tight(&self, w: &[Rational]) -> bool {
        super::dot_rat(&self.normal, w).is_zero()
    }
}

/// Generators of a polyhedral cone: `span(lineality) + cone(rays)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayDecomposition {
    /// Extreme rays as primitive integer vectors, sorted lexicographically.
    /// When the lineality space is nontrivial these are representatives
    /// modulo it.
    pub rays: Vec<Vec<BigInt>>,
    /// A basis of the lineality space.
    pub lineality: Vec<Vec<BigInt>>,
    /// Dimension of the cone.
    pub dim: usize,
    pub ambient: usize,
}

impl RayDecomposition {
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
}

struct Ray {
    v: Vec<BigInt>,
    // indices of processed halfspaces this ray is tight on
    zeros: Vec<usize>,
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    primitive(x.iter().zip(y).map(|(p, q)| a * p - b * q).collect())
}

fn common(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Extreme rays of `{w in R^dim : h(w) >= 0 for all h}`.
///
/// Halfspaces are inserted one at a time. While the lineality space is not
/// orthogonal to the new normal, one lineality direction is turned into a
/// ray; otherwise the classical ray-pair step is applied with the algebraic
/// adjacency test.
pub fn dd_rays(halfspaces: &[Halfspace], dim: usize) -> Result<RayDecomposition, LinalgError> {
    if dim == 0 {
        return Err(LinalgError::ZeroDimension);
    }
    let normals: Vec<Vec<BigInt>> = halfspaces
        .iter()
        .map(|h| {
            if h.dim() != dim {
                Err(LinalgError::DimensionMismatch {
                    expected: dim,
                    found: h.dim(),
                })
            } else {
                Ok(h.integer_normal())
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(dd_integer(&normals, dim))
}

pub(crate) fn dd_integer(normals: &[Vec<BigInt>], dim: usize) -> RayDecomposition {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, h) in normals.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot_int(h, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut hl = dot_int(h, &l);
            if hl.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                hl = -hl;
            }
            for v in &mut lineality {
                let hv = dot_int(h, v);
                if !hv.is_zero() {
                    *v = combine(&hl, v, &hv, &l);
                }
            }
            for r in &mut rays {
                let hr = dot_int(h, &r.v);
                if !hr.is_zero() {
                    r.v = combine(&hl, &r.v, &hr, &l);
                }
                r.zeros.push(k);
            }
            rays.push(Ray {
                v: l,
                zeros: (0..k).collect(),
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot_int(h, &r.v)).collect();
        let target = dim - lineality.len();
        let mut next: Vec<Ray> = Vec::new();
        for (p, vp) in vals.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (n, vn) in vals.iter().enumerate() {
                if !vn.is_negative() {
                    continue;
                }
                let zeros = common(&rays[p].zeros, &rays[n].zeros);
                if target < 2 || zeros.len() + 2 < target {
                    continue;
                }
                let tight: Vec<Vec<BigInt>> = zeros.iter().map(|&i| normals[i].clone()).collect();
                if int_rank(&tight) != target - 2 {
                    continue;
                }
                let v = combine(vp, &rays[n].v, vn, &rays[p].v);
                let mut zeros = zeros;
                zeros.push(k);
                next.push(Ray { v, zeros });
            }
        }
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_positive() {
                next.push(r);
            } else if v.is_zero() {
                let mut r = r;
                r.zeros.push(k);
                next.push(r);
            }
        }
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| primitive(r.v)).collect();
    out.sort();
    out.dedup();
    let mut span = out.clone();
    span.extend(lineality.iter().cloned());
    let cone_dim = int_rank(&span);
    RayDecomposition {
        rays: out,
        lineality,
        dim: cone_dim,
        ambient: dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn hs(v: &[i64]) -> Halfspace {
        Halfspace::from_integers(&v.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn orthant() {
        let d = dd_rays(&[hs(&[1, 0]), hs(&[0, 1])], 2).unwrap();
        assert_eq!(d.rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
        assert!(d.is_full_dimensional());
        assert!(d.is_pointed());
    }

    #[test]
    fn a4_first_cone() {
        let d = dd_rays(&[hs(&[0, 1]), hs(&[1, -4])], 2).unwrap();
        assert_eq!(d.rays, vec![iv(&[1, 0]), iv(&[4, 1])]);
    }

    #[test]
    fn seven_first_cone() {
        let d = dd_rays(&[hs(&[1, 0, 0]), hs(&[-2, 1, 0]), hs(&[-4, 0, 1])], 3).unwrap();
        assert_eq!(
            d.rays,
            vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 2, 4])]
        );
        assert_eq!(d.dim, 3);
    }

    #[test]
    fn lineality_is_reported() {
        let d = dd_rays(&[hs(&[1, 0, 0])], 3).unwrap();
        assert_eq!(d.lineality_dim(), 2);
        assert_eq!(d.rays.len(), 1);
        assert_eq!(d.dim, 3);

        let d = dd_rays(&[hs(&[1, 0]), hs(&[-1, 0])], 2).unwrap();
        assert_eq!(d.lineality_dim(), 1);
        assert!(d.rays.is_empty());
        assert_eq!(d.dim, 1);
    }

    #[test]
    fn redundant_and_degenerate_inputs() {
        // square pyramid: four facets, one redundant inequality
        let d = dd_rays(
            &[
                hs(&[1, 0, 1]),
                hs(&[-1, 0, 1]),
                hs(&[0, 1, 1]),
                hs(&[0, -1, 1]),
                hs(&[0, 0, 1]),
            ],
            3,
        )
        .unwrap();
        assert_eq!(
            d.rays,
            vec![
                iv(&[-1, -1, 1]),
                iv(&[-1, 1, 1]),
                iv(&[1, -1, 1]),
                iv(&[1, 1, 1])
            ]
        );

        // a flat cone: w3 = 0 and the first quadrant
        let d = dd_rays(&[hs(&[1, 0, 0]), hs(&[0, 1, 0]), hs(&[0, 0, 1]), hs(&[0, 0, -1])], 3)
            .unwrap();
        assert_eq!(d.rays, vec![iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
        assert_eq!(d.dim, 2);
        assert!(!d.is_full_dimensional());

        // only the origin
        let d = dd_rays(&[hs(&[1, 0]), hs(&[0, 1]), hs(&[-1, -1])], 2).unwrap();
        assert!(d.rays.is_empty());
        assert_eq!(d.dim, 0);
    }

    #[test]
    fn errors() {
        assert_eq!(dd_rays(&[], 0).unwrap_err(), LinalgError::ZeroDimension);
        assert!(Halfspace::from_integers(&[int(0), int(0)]).is_err());
        assert!(dd_rays(&[hs(&[1, 0, 0])], 2).is_err());
        let free = dd_rays(&[], 2).unwrap();
        assert_eq!(free.lineality_dim(), 2);
    }
}
