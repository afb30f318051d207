//! Convex hulls, triangulations and exact volumes of small point sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dd::dd_integer;
use super::{clear_denominators, coordinate_sum, dot_int, LinalgError, Rational};

fn differences(points: &[&Vec<Rational>]) -> Vec<Vec<BigInt>> {
    let base = points[0];
    points[1..]
        .iter()
        .map(|p| {
            let d: Vec<Rational> = p.iter().zip(base).map(|(a, b)| a - b).collect();
            clear_denominators(&d)
        })
        .collect()
}

/// Dimension of the affine hull; `None` for an empty set.
pub fn affine_rank(points: &[Vec<Rational>]) -> Option<usize> {
    let refs: Vec<&Vec<Rational>> = points.iter().collect();
    affine_rank_of(&refs)
}

fn affine_rank_of(points: &[&Vec<Rational>]) -> Option<usize> {
    if points.is_empty() {
        return None;
    }
    Some(super::int_rank(&differences(points)))
}

fn lifted(p: &[Rational]) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(p.len() + 1);
    v.push(Rational::one());
    v.extend(p.iter().cloned());
    clear_denominators(&v)
}

/// Facets of `conv(points)` inside its own affine hull, each given as the
/// sorted list of point indices lying on it.
pub fn hull_facets(points: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..points.len()).collect();
    facets_of(points, &idx)
}

fn facets_of(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<usize>> {
    let Some(first) = idx.first() else {
        return Vec::new();
    };
    let dim = points[*first].len() + 1;
    let lifts: Vec<Vec<BigInt>> = idx.iter().map(|&i| lifted(&points[i])).collect();
    let dual = dd_integer(&lifts, dim);
    let mut facets: Vec<Vec<usize>> = dual
        .rays
        .iter()
        .map(|y| {
            idx.iter()
                .zip(&lifts)
                .filter(|(_, l)| dot_int(y, l).is_zero())
                .map(|(&i, _)| i)
                .collect()
        })
        .collect();
    facets.sort();
    facets.dedup();
    facets
}

/// A triangulation of `conv(points)` into simplices of full affine
/// dimension, by pulling from the first point recursively over facets.
pub fn triangulate_hull(points: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..points.len()).collect();
    triangulate(points, &idx)
}

fn triangulate(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<usize>> {
    let refs: Vec<&Vec<Rational>> = idx.iter().map(|&i| &points[i]).collect();
    let Some(d) = affine_rank_of(&refs) else {
        return Vec::new();
    };
    if d == 0 {
        return vec![vec![idx[0]]];
    }
    if idx.len() == d + 1 {
        return vec![idx.to_vec()];
    }
    let apex = idx[0];
    let mut out = Vec::new();
    for facet in facets_of(points, idx) {
        if facet.contains(&apex) {
            continue;
        }
        for mut s in triangulate(points, &facet) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Euclidean volume of the simplex with `k + 1` vertices in R^k.
pub fn simplex_volume(vertices: &[&Vec<Rational>]) -> Rational {
    let k = vertices.len() - 1;
    let rows: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|p| p.iter().zip(vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    let l = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * &l).to_integer()).collect())
        .collect();
    let m = super::IntMatrix::from_rows(&ints).expect("rows have equal length");
    let det = super::int_det(&m).expect("square by construction");
    Rational::new(det.abs(), factorial(k) * num_traits::pow(l, k))
}

/// Volume of `conv(vertices)` for points on the hyperplane where coordinates
/// sum to 1, measured in the chart that forgets the first coordinate.
pub fn cross_section_volume(vertices: &[Vec<Rational>]) -> Result<Rational, LinalgError> {
    let Some(first) = vertices.first() else {
        return Err(LinalgError::Empty);
    };
    let n = first.len();
    for (i, v) in vertices.iter().enumerate() {
        if v.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if !coordinate_sum(v).is_one() {
            return Err(LinalgError::OffHyperplane(i));
        }
    }
    let chart: Vec<Vec<Rational>> = vertices.iter().map(|v| v[1..].to_vec()).collect();
    let k = n - 1;
    if affine_rank(&chart) != Some(k) {
        return Ok(Rational::zero());
    }
    if k == 0 {
        return Ok(Rational::one());
    }
    Ok(triangulate_hull(&chart)
        .iter()
        .map(|s| {
            let verts: Vec<&Vec<Rational>> = s.iter().map(|&i| &chart[i]).collect();
            simplex_volume(&verts)
        })
        .fold(Rational::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n)
            .map(|j| if i == j { rat(1, 1) } else { rat(0, 1) })
            .collect()
    }

    #[test]
    fn unit_simplex() {
        let pts: Vec<_> = (0..4).map(|i| e(4, i)).collect();
        assert_eq!(cross_section_volume(&pts).unwrap(), rat(1, 6));
    }

    #[test]
    fn degenerate_hull() {
        let pts: Vec<_> = (0..3).map(|i| e(4, i)).collect();
        assert_eq!(cross_section_volume(&pts).unwrap(), rat(0, 1));
    }

    #[test]
    fn simplex_with_midpoint() {
        let mid = vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)];
        let pts = vec![e(4, 0), e(4, 1), e(4, 2), mid];
        assert_eq!(cross_section_volume(&pts).unwrap(), rat(1, 12));
    }

    #[test]
    fn off_hyperplane_is_rejected() {
        let pts = vec![e(3, 0), vec![rat(1, 2), rat(0, 1), rat(0, 1)]];
        assert_eq!(
            cross_section_volume(&pts).unwrap_err(),
            LinalgError::OffHyperplane(1)
        );
        assert_eq!(cross_section_volume(&[]).unwrap_err(), LinalgError::Empty);
    }

    #[test]
    fn octahedron_with_interior_points() {
        // octahedron |x|+|y|+|z| <= 1 has volume 4/3; extra interior points
        // must not change the hull
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut p = vec![rat(0, 1); 3];
                p[i] = rat(s, 1);
                pts.push(p);
            }
        }
        pts.push(vec![rat(0, 1); 3]);
        pts.push(vec![rat(1, 4), rat(1, 4), rat(0, 1)]);
        assert_eq!(hull_facets(&pts).len(), 8);
        let total = triangulate_hull(&pts)
            .iter()
            .map(|s| simplex_volume(&s.iter().map(|&i| &pts[i]).collect::<Vec<_>>()))
            .fold(rat(0, 1), |a, b| a + b);
        assert_eq!(total, rat(4, 3));
    }

    #[test]
    fn facets_of_a_planar_square_in_space() {
        let pts = vec![
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1), rat(1, 1)],
        ];
        let f = hull_facets(&pts);
        assert_eq!(f, vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(triangulate_hull(&pts).len(), 2);
    }
}
