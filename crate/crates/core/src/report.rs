//! Canonical JSON for fans and OBJ export of cross-sections.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{is_crepant, is_smooth, Fan, FanReport, Provenance};
use crate::group::{enumerate_group, parse_group_spec, GroupError, GroupSpec};
use crate::linalg::{format_rational, hull_facets, parse_rational, triangulate_hull, LinalgError, Rational};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed fan document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed fan document: {0}")]
    Format(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rational(#[from] LinalgError),
    #[error("cross-section export needs n = 3 or 4, got n = {0}")]
    Unsupported(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub generators: Vec<String>,
    pub n: usize,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntry {
    pub age: String,
    pub coords: Vec<String>,
    /// Coordinates in the lattice basis, as decimal strings.
    pub lattice: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeEntry {
    pub provenance: String,
    pub rays: Vec<usize>,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub crepant: bool,
    pub max_cone_count: usize,
    pub non_junior_rays: Vec<usize>,
    pub non_smooth_cones: Vec<usize>,
    pub smooth: bool,
    pub support_volume: Option<String>,
    pub valid: bool,
}

/// Serializable form of a fan; all exact numbers are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDocument {
    pub cones: Vec<ConeEntry>,
    pub group: GroupEntry,
    pub lattice_basis: Vec<Vec<String>>,
    pub rays: Vec<RayEntry>,
    pub report: ReportEntry,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl FanDocument {
    pub fn from_fan(fan: &Fan) -> Self {
        let gd = &fan.group;
        let rep: FanReport = is_crepant(gd, fan);
        let rays = fan.rays();
        let index_of = |p: &Vec<Rational>| rays.iter().position(|r| &r.point == p).expect("ray of the fan");
        let mut cones: Vec<ConeEntry> = fan
            .cones
            .iter()
            .zip(&fan.provenance)
            .map(|(c, p)| {
                let mut idx: Vec<usize> = c.rays().iter().map(|r| index_of(&r.point)).collect();
                idx.sort_unstable();
                ConeEntry {
                    provenance: p.to_string(),
                    rays: idx,
                    smooth: is_smooth(gd, c),
                }
            })
            .collect();
        cones.sort_by(|a, b| a.rays.cmp(&b.rays));
        let non_smooth_cones = cones
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.smooth)
            .map(|(i, _)| i)
            .collect();
        Self {
            group: GroupEntry {
                generators: gd.spec.generators.iter().map(ToString::to_string).collect(),
                n: gd.n(),
                order: gd.order,
            },
            lattice_basis: gd.lattice_basis.iter().map(|r| strings(r)).collect(),
            rays: rays
                .iter()
                .map(|r| RayEntry {
                    age: format_rational(&r.age()),
                    coords: strings(&r.point),
                    lattice: r.lattice.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            report: ReportEntry {
                crepant: rep.crepant,
                max_cone_count: rep.max_cone_count,
                non_junior_rays: rep.non_junior_rays.iter().map(|r| index_of(&r.point)).collect(),
                non_smooth_cones,
                smooth: rep.smooth,
                support_volume: rep.validation.support_volume.as_ref().map(format_rational),
                valid: rep.valid,
            },
            cones,
        }
    }

    /// Canonical text: keys sorted, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's map is ordered, so going through Value sorts the keys
        let value = serde_json::to_value(self).expect("documents serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the fan from the group and the ray coordinates; the stored
    /// report is not trusted.
    pub fn to_fan(&self) -> Result<Fan, ReportError> {
        let spec: GroupSpec = parse_group_spec(&self.group.generators.join("; "))?;
        if spec.n != self.group.n {
            return Err(ReportError::Format(format!(
                "group acts on C^{} but n = {}",
                spec.n, self.group.n
            )));
        }
        let gd = enumerate_group(&spec);
        let rays: Vec<Vec<Rational>> = self
            .rays
            .iter()
            .map(|r| {
                if r.coords.len() != gd.n() {
                    return Err(ReportError::Format(format!("ray {:?} has the wrong length", r.coords)));
                }
                r.coords.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>().map_err(Into::into)
            })
            .collect::<Result<_, ReportError>>()?;
        let cones = self
            .cones
            .iter()
            .map(|c| {
                let gens = c
                    .rays
                    .iter()
                    .map(|&i| {
                        rays.get(i)
                            .cloned()
                            .ok_or_else(|| ReportError::Format(format!("ray index {i} out of range")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if gens.is_empty() || gens.iter().any(|g| g.iter().all(|x| x == &Rational::from_integer(0.into()))) {
                    return Err(ReportError::Format("cone without nonzero rays".into()));
                }
                Ok((gens, Provenance::parse(&c.provenance)))
            })
            .collect::<Result<Vec<_>, ReportError>>()?;
        Ok(Fan::from_generators(gd, cones))
    }
}

pub fn export_fan_json(fan: &Fan, path: &Path) -> Result<FanDocument, ReportError> {
    let doc = FanDocument::from_fan(fan);
    std::fs::write(path, doc.to_json())?;
    Ok(doc)
}

pub fn import_fan_json(path: &Path) -> Result<FanDocument, ReportError> {
    FanDocument::from_json(&std::fs::read_to_string(path)?)
}

/// Triangle mesh of the cross-sections, one group per maximal cone.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshDocument {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Group name and the range of `faces` belonging to it.
    pub groups: Vec<(String, std::ops::Range<usize>)>,
}

/// Drops x1 from points on the hyperplane of coordinate sum 1; for n = 3 the
/// third coordinate is 0.
fn chart(p: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = p[1..].to_vec();
    while v.len() < 3 {
        v.push(Rational::from_integer(BigInt::from(0)));
    }
    v
}

pub fn mesh_of(fan: &Fan) -> Result<MeshDocument, ReportError> {
    let n = fan.n();
    if n != 3 && n != 4 {
        return Err(ReportError::Unsupported(n));
    }
    let mut index: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    for c in &fan.cones {
        for p in c.cross_section() {
            let len = index.len();
            index.entry(chart(&p)).or_insert(len);
        }
    }
    // renumber in sorted order so the output does not depend on cone order
    let sorted: Vec<Vec<Rational>> = index.keys().cloned().collect();
    let position: BTreeMap<&Vec<Rational>, usize> = sorted.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let vertices = sorted
        .iter()
        .map(|p| {
            let f = |x: &Rational| x.to_f64().unwrap_or(f64::NAN);
            [f(&p[0]), f(&p[1]), f(&p[2])]
        })
        .collect();

    let mut faces = Vec::new();
    let mut groups = Vec::new();
    for (i, c) in fan.cones.iter().enumerate() {
        let pts: Vec<Vec<Rational>> = c.cross_section().iter().map(|p| chart(p)).collect();
        let start = faces.len();
        let polygons: Vec<Vec<usize>> = if n == 4 {
            hull_facets(&pts)
        } else {
            vec![(0..pts.len()).collect()]
        };
        for poly in polygons {
            let sub: Vec<Vec<Rational>> = poly.iter().map(|&k| pts[k].clone()).collect();
            for t in triangulate_hull(&sub) {
                if t.len() == 3 {
                    faces.push([
                        position[&sub[t[0]]],
                        position[&sub[t[1]]],
                        position[&sub[t[2]]],
                    ]);
                }
            }
        }
        groups.push((format!("cone_{i}"), start..faces.len()));
    }
    Ok(MeshDocument {
        vertices,
        faces,
        groups,
    })
}

/// Shortest decimal that reproduces `x` rounded to 12 significant digits.
fn sig12(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

impl MeshDocument {
    pub fn to_obj(&self) -> String {
        let mut s = String::from("# cross-section on the hyperplane x1+...+xn = 1, chart (x2, x3, x4)\n");
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", sig12(v[0]), sig12(v[1]), sig12(v[2]));
        }
        for (name, range) in &self.groups {
            let _ = writeln!(s, "g {name}");
            for f in &self.faces[range.clone()] {
                let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
            }
        }
        s
    }
}

pub fn export_obj(md: &MeshDocument, path: &Path) -> Result<(), ReportError> {
    std::fs::write(path, md.to_obj())?;
    Ok(())
}
