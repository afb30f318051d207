//! Non-smoothness certificate for the family 1/2m(1,2m-1,m,m).
//!
//! The distinguished G-graph is the complement of
//! `I = (x^m, y^m, xy, z^2, xz, yz, w)`. Its cone is checked for smoothness,
//! and the five Laurent monomials `X = x^m/z`, `Y = y^m/z`,
//! `Z = xz/y^(m-1)`, `W = yz/x^(m-1)`, `V = w/z` are checked to lie in the
//! dual semigroup, where they satisfy `X + W = Y + Z`, i.e. `XW - YZ`.

use num_bigint::BigInt;

use crate::fan::{cone_of, dual_contains, is_smooth, Cone};
use crate::ggraph::{complement_of_ideal, ggraph_from_monomials, is_ggraph, GGraph, Violation};
use crate::group::{enumerate_group, GroupData, GroupSpec};
use crate::monomial::Monomial;

#[derive(Debug, Clone)]
pub struct DualCheck {
    pub name: String,
    pub exponent: Vec<BigInt>,
    pub contained: bool,
}

#[derive(Debug, Clone)]
pub struct SingularCertificate {
    pub m: u64,
    pub group: GroupData,
    pub ideal: Vec<Monomial>,
    pub ggraph_check: Result<(), Violation>,
    pub ggraph: Option<GGraph>,
    pub cone: Option<Cone>,
    pub smooth: Option<bool>,
    pub dual_checks: Vec<DualCheck>,
    pub relation_holds: bool,
}

impl SingularCertificate {
    /// Every part of the certificate holds: a G-graph whose cone is not smooth,
    /// with all five semigroup elements present and related by XW = YZ.
    pub fn verified(&self) -> bool {
        self.ggraph_check.is_ok()
            && self.smooth == Some(false)
            && self.dual_checks.iter().all(|d| d.contained)
            && self.relation_holds
    }
}

fn mono(e: [u32; 4]) -> Monomial {
    Monomial::new(e.to_vec())
}

/// `I = (x^m, y^m, xy, z^2, xz, yz, w)`.
pub fn singular_ideal(m: u32) -> Vec<Monomial> {
    vec![
        mono([m, 0, 0, 0]),
        mono([0, m, 0, 0]),
        mono([1, 1, 0, 0]),
        mono([0, 0, 2, 0]),
        mono([1, 0, 1, 0]),
        mono([0, 1, 1, 0]),
        mono([0, 0, 0, 1]),
    ]
}

/// The exponent vectors of X, Y, Z, W, V in that order.
pub fn semigroup_generators(m: i64) -> Vec<(&'static str, Vec<BigInt>)> {
    let v = |a: [i64; 4]| a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    vec![
        ("x^m/z", v([m, 0, -1, 0])),
        ("y^m/z", v([0, m, -1, 0])),
        ("xz/y^(m-1)", v([1, 1 - m, 1, 0])),
        ("yz/x^(m-1)", v([1 - m, 1, 1, 0])),
        ("w/z", v([0, 0, -1, 1])),
    ]
}

pub fn singular_certificate(m: u64) -> SingularCertificate {
    assert!(m >= 1, "m must be positive");
    let group = enumerate_group(&GroupSpec::singular_family(m));
    let ideal = singular_ideal(m as u32);
    let members = complement_of_ideal(&ideal, 4).expect("I contains a power of every variable");
    let ggraph_check = is_ggraph(&group, &members);
    let ggraph = ggraph_from_monomials(&group, &members).ok();
    let cone = ggraph.as_ref().map(|g| cone_of(&group, g));
    let smooth = cone.as_ref().map(|c| is_smooth(&group, c));

    let gens = semigroup_generators(m as i64);
    let dual_checks = gens
        .iter()
        .map(|(name, e)| DualCheck {
            name: name.to_string(),
            exponent: e.clone(),
            contained: cone.as_ref().is_some_and(|c| dual_contains(&group, c, e)),
        })
        .collect();
    let add = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> { a.iter().zip(b).map(|(p, q)| p + q).collect() };
    // X + W = Y + Z
    let relation_holds = add(&gens[0].1, &gens[3].1) == add(&gens[1].1, &gens[2].1);

    SingularCertificate {
        m,
        group,
        ideal,
        ggraph_check,
        ggraph,
        cone,
        smooth,
        dual_checks,
        relation_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_certificate() {
        let c = singular_certificate(2);
        assert!(c.ggraph_check.is_ok());
        assert_eq!(c.ggraph.as_ref().unwrap().monomials.len(), 4);
        assert_eq!(c.smooth, Some(false));
        assert!(c.dual_checks.iter().all(|d| d.contained));
        assert!(c.relation_holds);
        assert!(c.verified());
        let cone = c.cone.as_ref().unwrap();
        assert!(dual_contains(&c.group, cone, &[2.into(), 0.into(), (-1).into(), 0.into()]));
        assert!(!dual_contains(&c.group, cone, &[(-1).into(), 0.into(), 0.into(), 0.into()]));
    }

    #[test]
    fn m3_certificate() {
        assert!(singular_certificate(3).verified());
    }

    #[test]
    fn relation_is_exponent_arithmetic() {
        for m in 1..6 {
            assert!(singular_certificate(m).relation_holds);
        }
    }
}
