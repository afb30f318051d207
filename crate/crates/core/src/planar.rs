//! Triangulations of point sets lying in a 2-flat of R^n.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::{affine_rank, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("need at least three points, got {0}")]
    TooFew(usize),
    #[error("point {0} is repeated")]
    Duplicate(usize),
    #[error("points are collinear")]
    Collinear,
    #[error("points do not lie in a common 2-flat")]
    NotPlanar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarTriangulation {
    pub points: Vec<Vec<Rational>>,
    /// Index triples into `points`, each sorted, the list sorted.
    pub triangles: Vec<[usize; 3]>,
}

/// Affine chart of a 2-flat: two coordinates on which the flat projects
/// bijectively.
struct Chart {
    i: usize,
    j: usize,
}

impl Chart {
    fn find(points: &[Vec<Rational>]) -> Option<Self> {
        let n = points[0].len();
        for i in 0..n {
            for j in i + 1..n {
                let proj: Vec<Vec<Rational>> = points.iter().map(|p| vec![p[i].clone(), p[j].clone()]).collect();
                if affine_rank(&proj) == Some(2) {
                    return Some(Self { i, j });
                }
            }
        }
        None
    }

    /// Twice the signed area of `(a, b, c)` in the chart.
    fn orient(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Ordering {
        let (i, j) = (self.i, self.j);
        let d = (&b[i] - &a[i]) * (&c[j] - &a[j]) - (&b[j] - &a[j]) * (&c[i] - &a[i]);
        d.cmp(&Rational::zero())
    }
}

fn sorted_triangle(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Placing triangulation: points are inserted in lexicographic order and
/// each new point is joined to every hull edge it sees.
pub fn triangulate_planar(points: &[Vec<Rational>]) -> Result<PlanarTriangulation, PlanarError> {
    if points.len() < 3 {
        return Err(PlanarError::TooFew(points.len()));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    if let Some(w) = order.windows(2).find(|w| points[w[0]] == points[w[1]]) {
        return Err(PlanarError::Duplicate(w[1]));
    }
    match affine_rank(points) {
        Some(2) => {}
        Some(r) if r < 2 => return Err(PlanarError::Collinear),
        _ => return Err(PlanarError::NotPlanar),
    }
    let chart = Chart::find(points).ok_or(PlanarError::NotPlanar)?;
    let p = |k: usize| points[k].as_slice();

    // the collinear prefix and the first point off its line
    let k = (2..order.len())
        .find(|&k| chart.orient(p(order[0]), p(order[1]), p(order[k])) != Ordering::Equal)
        .expect("affine rank is 2");
    let q = order[k];
    let mut triangles: Vec<[usize; 3]> = order[..k]
        .windows(2)
        .map(|w| sorted_triangle(w[0], w[1], q))
        .collect();
    let mut hull: Vec<usize> = order[..k].to_vec();
    if chart.orient(p(order[0]), p(order[k - 1]), p(q)) == Ordering::Less {
        hull.reverse();
    }
    hull.push(q);

    for &v in &order[k + 1..] {
        let len = hull.len();
        let visible = |e: usize| {
            chart.orient(p(hull[e % len]), p(hull[(e + 1) % len]), p(v)) == Ordering::Less
        };
        let start = (0..len)
            .find(|&e| visible(e) && !visible(e + len - 1))
            .expect("a new lexicographic maximum lies outside the hull");
        let mut run = 0;
        while run < len && visible(start + run) {
            triangles.push(sorted_triangle(
                hull[(start + run) % len],
                hull[(start + run + 1) % len],
                v,
            ));
            run += 1;
        }
        let rotated: Vec<usize> = (0..len).map(|t| hull[(start + t) % len]).collect();
        let mut next = vec![rotated[0], v];
        next.extend_from_slice(&rotated[run..]);
        hull = next;
    }
    triangles.sort();
    Ok(PlanarTriangulation {
        points: points.to_vec(),
        triangles,
    })
}

/// All triangulations of a lattice strip whose rows are given bottom to top,
/// each row ordered along a common direction, in which every edge joins
/// neighbours within a row or points of consecutive rows. Rows of one point
/// are allowed. Indices refer to the concatenation of the rows.
pub fn strip_triangulations(rows: &[Vec<Vec<Rational>>]) -> Vec<PlanarTriangulation> {
    let points: Vec<Vec<Rational>> = rows.iter().flatten().cloned().collect();
    let mut offsets = Vec::with_capacity(rows.len());
    let mut acc = 0;
    for r in rows {
        offsets.push(acc);
        acc += r.len();
    }
    let mut per_band: Vec<Vec<Vec<[usize; 3]>>> = Vec::new();
    for b in 0..rows.len().saturating_sub(1) {
        let (lo, hi) = (offsets[b], offsets[b + 1]);
        per_band.push(interleavings(rows[b].len(), rows[b + 1].len())
            .into_iter()
            .map(|steps| {
                let (mut i, mut j) = (0, 0);
                steps
                    .into_iter()
                    .map(|bottom| {
                        if bottom {
                            i += 1;
                            sorted_triangle(lo + i - 1, lo + i, hi + j)
                        } else {
                            j += 1;
                            sorted_triangle(hi + j - 1, hi + j, lo + i)
                        }
                    })
                    .collect()
            })
            .collect());
    }
    let mut combos: Vec<Vec<[usize; 3]>> = vec![Vec::new()];
    for band in per_band {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                band.iter().map(move |t| {
                    let mut c = c.clone();
                    c.extend_from_slice(t);
                    c
                })
            })
            .collect();
    }
    combos
        .into_iter()
        .map(|mut triangles| {
            triangles.sort();
            PlanarTriangulation {
                points: points.clone(),
                triangles,
            }
        })
        .collect()
}

/// Sequences of `a - 1` bottom steps and `b - 1` top steps, `true` = bottom.
fn interleavings(a: usize, b: usize) -> Vec<Vec<bool>> {
    fn go(a: usize, b: usize, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if a == 0 && b == 0 {
            out.push(prefix.clone());
            return;
        }
        if a > 0 {
            prefix.push(true);
            go(a - 1, b, prefix, out);
            prefix.pop();
        }
        if b > 0 {
            prefix.push(false);
            go(a, b - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(a.saturating_sub(1), b.saturating_sub(1), &mut Vec::new(), &mut out);
    out
}

/// Sum of the chart areas of all triangles, doubled; used to compare
/// triangulations of the same region.
pub fn doubled_area(t: &PlanarTriangulation) -> Rational {
    let Some(chart) = Chart::find(&t.points) else {
        return Rational::zero();
    };
    let (i, j) = (chart.i, chart.j);
    t.triangles
        .iter()
        .map(|&[a, b, c]| {
            let (a, b, c) = (&t.points[a], &t.points[b], &t.points[c]);
            ((&b[i] - &a[i]) * (&c[j] - &a[j]) - (&b[j] - &a[j]) * (&c[i] - &a[i])).abs()
        })
        .fold(Rational::zero(), |x, y| x + y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn p2(x: i64, y: i64) -> Vec<Rational> {
        vec![rat(x, 1), rat(y, 1)]
    }

    #[test]
    fn single_triangle() {
        let t = triangulate_planar(&[p2(0, 0), p2(1, 0), p2(0, 1)]).unwrap();
        assert_eq!(t.triangles, vec![[0, 1, 2]]);
    }

    #[test]
    fn square_grid() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push(p2(x, y));
            }
        }
        let t = triangulate_planar(&pts).unwrap();
        assert_eq!(t.triangles.len(), 8);
        assert_eq!(doubled_area(&t), rat(8, 1));
        let used: std::collections::BTreeSet<usize> = t.triangles.iter().flatten().copied().collect();
        assert_eq!(used.len(), 9);
    }

    #[test]
    fn collinear_start() {
        let pts = vec![p2(0, 0), p2(0, 1), p2(0, 2), p2(0, 3), p2(1, 0), p2(2, 5)];
        let t = triangulate_planar(&pts).unwrap();
        assert_eq!(doubled_area(&t), rat(11, 1));
        // every point is on the boundary
        assert_eq!(t.triangles.len(), 4);
    }

    #[test]
    fn errors() {
        assert_eq!(
            triangulate_planar(&[p2(0, 0), p2(1, 1), p2(2, 2)]),
            Err(PlanarError::Collinear)
        );
        assert_eq!(triangulate_planar(&[p2(0, 0), p2(1, 1)]), Err(PlanarError::TooFew(2)));
        assert!(matches!(
            triangulate_planar(&[p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 0)]),
            Err(PlanarError::Duplicate(_))
        ));
        let tet = vec![
            vec![rat(0, 1), rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        assert_eq!(triangulate_planar(&tet), Err(PlanarError::NotPlanar));
    }

    #[test]
    fn quadrilateral_in_space() {
        let q = vec![
            vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 3), rat(1, 3), rat(1, 3), rat(0, 1)],
            vec![rat(1, 3), rat(1, 3), rat(0, 1), rat(1, 3)],
        ];
        assert_eq!(triangulate_planar(&q).unwrap().triangles.len(), 2);
    }

    #[test]
    fn strips() {
        let bottom: Vec<_> = (0..4).map(|x| p2(x, 0)).collect();
        let top: Vec<_> = (0..2).map(|x| p2(x, 1)).collect();
        let all = strip_triangulations(&[bottom.clone(), top.clone()]);
        assert_eq!(all.len(), 4);
        for t in &all {
            assert_eq!(t.triangles.len(), 4);
            assert_eq!(doubled_area(t), rat(4, 1));
        }
        let apex = vec![p2(0, 2)];
        let tri = strip_triangulations(&[bottom, top, apex]);
        assert_eq!(tri.len(), 4);
        assert!(tri.iter().all(|t| t.triangles.len() == 5));
    }
}
