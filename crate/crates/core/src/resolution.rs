//! Explicit crepant resolutions for the two four-dimensional series
//! `<1/r(1,1,0,r-2), 1/r(0,0,1,r-1)>` and `1/r(1,a,a^2,a^3)`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::{is_crepant, Fan, Provenance};
use crate::group::{enumerate_group, junior_points, GroupData, GroupSpec};
use crate::linalg::{invert, rat_int, Rational};
use crate::planar::{strip_triangulations, triangulate_planar, PlanarError, PlanarTriangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Triangulation(#[from] PlanarError),
    #[error("not a fan with the right support: {0}")]
    InvalidFan(String),
    #[error("cone {0} is not smooth")]
    NotSmooth(String),
    #[error("ray {0} is not junior")]
    NotJunior(String),
    #[error("expected {expected} maximal cones, built {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("{0}")]
    Geometry(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Series {
    /// `<1/r(1,1,0,r-2), 1/r(0,0,1,r-1)>`
    I { r: u64 },
    /// `1/r(1,a,a^2,a^3)` with `r = 1+a+a^2+a^3`
    II { a: u64, axis: u8 },
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::I { r } => write!(f, "series i, r={r}"),
            Series::II { a, axis } => write!(f, "series ii, a={a}, axis={axis}"),
        }
    }
}

/// A verified crepant resolution together with how it was built.
#[derive(Debug, Clone)]
pub struct ResolutionFan {
    pub fan: Fan,
    pub series: Series,
    /// The planar triangulation used (series i only).
    pub triangulation: Option<PlanarTriangulation>,
    /// Apexes over which each triangle was coned, or the pyramid counts.
    pub notes: Vec<String>,
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n)
        .map(|j| if i == j { Rational::one() } else { Rational::zero() })
        .collect()
}

fn show(p: &[Rational]) -> String {
    let c: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", c.join(","))
}

/// Checks validity, smoothness, crepancy and the cone count `|G|`.
pub fn verify_crepant(gd: &GroupData, fan: &Fan) -> Result<(), ConstructionError> {
    let rep = is_crepant(gd, fan);
    if let Some(f) = &rep.validation.failure {
        return Err(ConstructionError::InvalidFan(f.to_string()));
    }
    if let Some(&i) = rep.non_smooth_cones.first() {
        return Err(ConstructionError::NotSmooth(fan.cones[i].to_string()));
    }
    if let Some(r) = rep.non_junior_rays.first() {
        return Err(ConstructionError::NotJunior(show(&r.point)));
    }
    if fan.len() != gd.order {
        return Err(ConstructionError::WrongCount {
            expected: gd.order,
            found: fan.len(),
        });
    }
    Ok(())
}

/// Points of the planar region for series (i): e3, e4 and every junior point
/// (all of which have equal first two coordinates).
fn series_i_points(gd: &GroupData) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = junior_points(gd).into_iter().map(|g| g.coords).collect();
    pts.push(unit(4, 2));
    pts.push(unit(4, 3));
    pts.sort();
    pts
}

/// The two junior points farthest from the edge e3 e4. For odd r these are
/// the top corners of the trapezoid.
fn trapezoid_top(pts: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let top = pts.iter().map(|p| p[0].clone()).max().expect("nonempty");
    pts.iter().filter(|p| p[0] == top).cloned().collect()
}

fn check_series_i(r: u64) -> Result<GroupData, ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::Parameter(format!("r must be at least 3, got {r}")));
    }
    Ok(enumerate_group(&GroupSpec::series_i(r)))
}

fn series_i_from_triangulation(
    gd: &GroupData,
    r: u64,
    tri: PlanarTriangulation,
) -> Result<ResolutionFan, ConstructionError> {
    let e1 = unit(4, 0);
    let e2 = unit(4, 1);
    let mut cones = Vec::new();
    for t in &tri.triangles {
        let verts: Vec<Vec<Rational>> = t.iter().map(|&i| tri.points[i].clone()).collect();
        let label: Vec<String> = verts.iter().map(|v| show(v)).collect();
        for (name, apex) in [("e1", &e1), ("e2", &e2)] {
            let mut g = verts.clone();
            g.push(apex.clone());
            cones.push((
                g,
                Provenance::Construction(format!("triangle {} coned over {name}", label.join(" "))),
            ));
        }
    }
    let mut notes = vec!["every triangle coned over both e1 and e2".to_string()];
    if r % 2 == 1 {
        let top = trapezoid_top(&tri.points);
        if top.len() != 2 {
            return Err(ConstructionError::Geometry(format!(
                "trapezoid has {} top corners",
                top.len()
            )));
        }
        let mut g = top.clone();
        g.push(e1);
        g.push(e2);
        cones.push((
            g,
            Provenance::Construction(format!("tetrahedron over {} {}", show(&top[0]), show(&top[1]))),
        ));
        notes.push(format!("top corners {} and {}", show(&top[0]), show(&top[1])));
    }
    let fan = Fan::from_generators(gd.clone(), cones);
    verify_crepant(gd, &fan)?;
    Ok(ResolutionFan {
        fan,
        series: Series::I { r },
        triangulation: Some(tri),
        notes,
    })
}

/// Placing triangulation of the triangle (even r) or trapezoid (odd r) on
/// the edge e3 e4, coned over e1 and e2; for odd r the remaining tetrahedron
/// on the two top corners and e1, e2 is added.
pub fn series_i_fan(r: u64) -> Result<ResolutionFan, ConstructionError> {
    let gd = check_series_i(r)?;
    let tri = triangulate_planar(&series_i_points(&gd))?;
    series_i_from_triangulation(&gd, r, tri)
}

/// Rows of the series (i) region, parallel to e3 e4, from the bottom edge
/// upwards; each row ordered by the third coordinate.
fn series_i_rows(gd: &GroupData) -> Vec<Vec<Vec<Rational>>> {
    let pts = series_i_points(gd);
    let heights: BTreeSet<Rational> = pts.iter().map(|p| p[0].clone()).collect();
    heights
        .into_iter()
        .map(|h| {
            let mut row: Vec<Vec<Rational>> = pts.iter().filter(|p| p[0] == h).cloned().collect();
            row.sort_by(|a, b| a[2].cmp(&b[2]));
            row
        })
        .collect()
}

/// Every crepant resolution built from a strip triangulation of the series (i)
/// region, in a fixed order.
pub fn series_i_resolutions(r: u64) -> Result<Vec<ResolutionFan>, ConstructionError> {
    let gd = check_series_i(r)?;
    strip_triangulations(&series_i_rows(&gd))
        .into_iter()
        .map(|t| series_i_from_triangulation(&gd, r, t))
        .collect()
}

/// Integer barycentric points of the dilated simplex `k * Delta^3`.
fn compositions(total: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..=total {
        for b in 0..=total - a {
            for c in 0..=total - a - b {
                out.push([a, b, c, total - a - b - c]);
            }
        }
    }
    out
}

fn plus(c: [usize; 4], idx: &[usize]) -> [usize; 4] {
    let mut d = c;
    for &i in idx {
        d[i] += 1;
    }
    d
}

/// A cell of the subdivision of V in barycentric coordinates.
struct Cell {
    vertices: Vec<[usize; 4]>,
    label: String,
}

/// Tetrahedral-octahedral subdivision of `k * Delta^3`, each octahedron
/// sliced along the axis joining `c+e_i+e_j` and its antipode.
fn subdivide_dilated(k: usize, axis: u8) -> Vec<Cell> {
    let (p, q) = match axis {
        1 => ([0, 1], [2, 3]),
        2 => ([0, 2], [1, 3]),
        _ => ([0, 3], [1, 2]),
    };
    let mut cells = Vec::new();
    for c in compositions(k - 1) {
        cells.push(Cell {
            vertices: (0..4).map(|i| plus(c, &[i])).collect(),
            label: format!("corner tetrahedron {c:?}"),
        });
    }
    if k >= 3 {
        for c in compositions(k - 3) {
            cells.push(Cell {
                vertices: (0..4).map(|i| {
                    let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
                    plus(c, &others)
                }).collect(),
                label: format!("inverted tetrahedron {c:?}"),
            });
        }
    }
    if k >= 2 {
        for c in compositions(k - 2) {
            let a = plus(c, &p);
            let b = plus(c, &q);
            // the equatorial square, in cyclic order
            let (s, t) = (p[0], p[1]);
            let (u, v) = (q[0], q[1]);
            let square = [plus(c, &[s, u]), plus(c, &[s, v]), plus(c, &[t, v]), plus(c, &[t, u])];
            for i in 0..4 {
                cells.push(Cell {
                    vertices: vec![a, b, square[i], square[(i + 1) % 4]],
                    label: format!("octahedron {c:?} slice {i}"),
                });
            }
        }
    }
    cells
}

/// Tetrahedral-octahedral subdivision of V and pyramids over its boundary.
pub fn series_ii_fan(a: u64, axis: u8) -> Result<ResolutionFan, ConstructionError> {
    if a < 2 {
        return Err(ConstructionError::Parameter(format!("a must be at least 2, got {a}")));
    }
    if !(1..=3).contains(&axis) {
        return Err(ConstructionError::Parameter(format!("axis must be 1, 2 or 3, got {axis}")));
    }
    let spec = GroupSpec::series_ii(a);
    let gd = enumerate_group(&spec);
    let r = rat_int(1 + a + a * a + a * a * a);
    let k = (a - 1) as usize;
    let powers = [1, a, a * a, a * a * a];

    // vertices of V: the cyclic shifts of (1,a,a^2,a^3)/r
    let v: Vec<Vec<Rational>> = (0..4)
        .map(|s| (0..4).map(|i| rat_int(powers[(i + 4 - s) % 4]) / &r).collect())
        .collect();
    let point = |c: &[usize; 4]| -> Vec<Rational> {
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| &v[j][i] * rat_int(c[j] as u64))
                    .fold(Rational::zero(), |x, y| x + y)
                    / rat_int(k as u64)
            })
            .collect()
    };

    // which e_i lies beyond each facet of V (facet f is opposite v_f)
    let inv = invert(&v).ok_or_else(|| ConstructionError::Geometry("V is degenerate".into()))?;
    let mut sees: Vec<Option<usize>> = vec![None; 4];
    for i in 0..4 {
        // barycentric coordinates of e_i with respect to v_0..v_3
        for (f, seen) in sees.iter_mut().enumerate() {
            if inv[i][f].is_negative() {
                if seen.is_some() {
                    return Err(ConstructionError::Geometry(format!("facet {f} of V is seen by two unit vectors")));
                }
                *seen = Some(i);
            }
        }
    }
    let sees: Vec<usize> = sees
        .into_iter()
        .enumerate()
        .map(|(f, s)| s.ok_or_else(|| ConstructionError::Geometry(format!("facet {f} of V is seen by no unit vector"))))
        .collect::<Result<_, _>>()?;

    let e = |i: usize| unit(4, i);
    let mut cones: Vec<(Vec<Vec<Rational>>, Provenance)> = Vec::new();
    let inner = subdivide_dilated(k, axis);
    for cell in &inner {
        cones.push((
            cell.vertices.iter().map(&point).collect(),
            Provenance::Construction(cell.label.clone()),
        ));
    }

    // vertex-pyramids: a boundary triangle of facet f with the unit vector beyond f
    let mut vertex_pyramids = 0;
    let mut seen_triangles = BTreeSet::new();
    for cell in &inner {
        for f in 0..4 {
            let on: Vec<[usize; 4]> = cell.vertices.iter().filter(|c| c[f] == 0).copied().collect();
            if on.len() == 3 {
                let mut key = on.clone();
                key.sort();
                if seen_triangles.insert((f, key)) {
                    let mut g: Vec<Vec<Rational>> = on.iter().map(&point).collect();
                    g.push(e(sees[f]));
                    cones.push((g, Provenance::Construction(format!("vertex-pyramid at e{}", sees[f] + 1))));
                    vertex_pyramids += 1;
                }
            }
        }
    }

    // edge-pyramids: a segment of the edge v_i v_j with the two unit vectors
    // beyond the facets containing it
    let mut edge_pyramids = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            let facets: Vec<usize> = (0..4).filter(|&f| f != i && f != j).collect();
            for t in 0..k {
                let mut c0 = [0; 4];
                c0[i] = t;
                c0[j] = k - t;
                let mut c1 = [0; 4];
                c1[i] = t + 1;
                c1[j] = k - t - 1;
                let mut g = vec![point(&c0), point(&c1)];
                g.extend(facets.iter().map(|&f| e(sees[f])));
                cones.push((
                    g,
                    Provenance::Construction(format!(
                        "edge-pyramid at e{} e{}",
                        sees[facets[0]] + 1,
                        sees[facets[1]] + 1
                    )),
                ));
                edge_pyramids += 1;
            }
        }
    }

    // face-pyramids: a vertex of V with the three unit vectors beyond its facets
    for i in 0..4 {
        let mut g = vec![v[i].clone()];
        g.extend((0..4).filter(|&f| f != i).map(|f| e(sees[f])));
        cones.push((g, Provenance::Construction(format!("face-pyramid at v{}", i + 1))));
    }

    let fan = Fan::from_generators(gd.clone(), cones);
    verify_crepant(&gd, &fan)?;
    Ok(ResolutionFan {
        fan,
        series: Series::II { a, axis },
        triangulation: None,
        notes: vec![
            format!("cells inside V: {}", inner.len()),
            format!("face-pyramids: 4"),
            format!("edge-pyramids: {edge_pyramids}"),
            format!("vertex-pyramids: {vertex_pyramids}"),
        ],
    })
}
