//! Diagonal abelian subgroups of SL(n, C) and the lattice N they generate.
//!
//! A generator `1/r(a_1,...,a_n)` acts by `x_i -> e^(2 pi i a_i / r) x_i`.
//! Group elements are stored as their points in `[0,1)^n`, so two elements
//! are equal exactly when their coordinates agree.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{self, hnf, int_det, IntMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cannot parse group generator {0:?}; expected 1/r(a1,...,an)")]
    Syntax(String),
    #[error("generator {0} is not in SL: weights sum to {1}, not a multiple of {2}")]
    NotSl(String, u64, u64),
    #[error("generator {0}: weight {1} is outside 0..{2}")]
    Range(String, i64, u64),
    #[error("generator {0} has {1} weights, expected {2}")]
    Arity(String, usize, usize),
    #[error("empty group specification")]
    Empty,
}

/// One generator `1/r(a_1,...,a_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub r: u64,
    pub a: Vec<u64>,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(f, "1/{}({})", self.r, a.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub n: usize,
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    /// Validates generators: SL condition, weight range and common arity.
    pub fn new(generators: Vec<Generator>) -> Result<Self, GroupError> {
        let n = generators.first().ok_or(GroupError::Empty)?.a.len();
        for g in &generators {
            if g.a.len() != n {
                return Err(GroupError::Arity(g.to_string(), g.a.len(), n));
            }
            if g.r == 0 {
                return Err(GroupError::Syntax(g.to_string()));
            }
            if let Some(&bad) = g.a.iter().find(|&&x| x >= g.r) {
                return Err(GroupError::Range(g.to_string(), bad as i64, g.r));
            }
            let s: u64 = g.a.iter().sum();
            if !s.is_multiple_of(g.r) {
                return Err(GroupError::NotSl(g.to_string(), s, g.r));
            }
        }
        Ok(Self { n, generators })
    }

    /// The series `<1/r(1,1,0,r-2), 1/r(0,0,1,r-1)>`.
    pub fn series_i(r: u64) -> Self {
        assert!(r >= 2, "series (i) needs r >= 2");
        Self::new(vec![
            Generator {
                r,
                a: vec![1, 1, 0, r - 2],
            },
            Generator {
                r,
                a: vec![0, 0, 1, r - 1],
            },
        ])
        .expect("series (i) generators are in SL")
    }

    /// The cyclic group `1/r(1,a,a^2,a^3)` with `r = 1+a+a^2+a^3`.
    pub fn series_ii(a: u64) -> Self {
        let r = 1 + a + a * a + a * a * a;
        Self::new(vec![Generator {
            r,
            a: vec![1, a % r, (a * a) % r, (a * a * a) % r],
        }])
        .expect("series (ii) generator is in SL")
    }

    /// The cyclic group `1/2m(1,2m-1,m,m)`.
    pub fn singular_family(m: u64) -> Self {
        assert!(m >= 1);
        let r = 2 * m;
        Self::new(vec![Generator {
            r,
            a: vec![1, r - 1, m, m],
        }])
        .expect("generator is in SL")
    }

    /// Least common multiple of the generator denominators.
    pub fn exponent(&self) -> u64 {
        self.generators.iter().fold(1, |l, g| l.lcm(&g.r))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "{}", gens.join("; "))
    }
}

fn parse_generator(text: &str) -> Result<Generator, GroupError> {
    let bad = || GroupError::Syntax(text.trim().to_string());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = compact.strip_prefix("1/").ok_or_else(bad)?;
    let (r, rest) = rest.split_once('(').ok_or_else(bad)?;
    let body = rest.strip_suffix(')').ok_or_else(bad)?;
    let r: u64 = r.parse().map_err(|_| bad())?;
    if r == 0 || body.is_empty() {
        return Err(bad());
    }
    let mut a = Vec::new();
    for tok in body.split(',') {
        let v: i64 = tok.parse().map_err(|_| bad())?;
        if v < 0 || v as u64 >= r {
            return Err(GroupError::Range(compact.clone(), v, r));
        }
        a.push(v as u64);
    }
    Ok(Generator { r, a })
}

/// Parses `1/r(a1,...,an); 1/s(b1,...,bn); ...`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    if text.trim().is_empty() {
        return Err(GroupError::Empty);
    }
    let gens = text
        .split(';')
        .map(parse_generator)
        .collect::<Result<Vec<_>, _>>()?;
    GroupSpec::new(gens)
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

/// A group element as the point `g-bar` in `[0,1)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<Rational>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn coordinate_sum(&self) -> Rational {
        linalg::coordinate_sum(&self.coords)
    }

    /// Integer numerators over the least common denominator.
    pub fn over_common_denominator(&self) -> (BigInt, Vec<BigInt>) {
        let d = self
            .coords
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let nums = self
            .coords
            .iter()
            .map(|x| (x * &d).to_integer())
            .collect();
        (d, nums)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, nums) = self.over_common_denominator();
        let nums: Vec<String> = nums.iter().map(ToString::to_string).collect();
        write!(f, "1/{}({})", d, nums.join(","))
    }
}

/// Sum of coordinates of `g-bar`; an integer for elements of SL(n).
pub fn age(g: &GroupElement) -> u64 {
    let s = g.coordinate_sum();
    assert!(s.is_integer(), "age of {g} is not integral");
    s.to_integer()
        .to_u64()
        .expect("age is a small nonnegative integer")
}

/// The group, its elements and a Z-basis of `N = Z^n + sum Z g-bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub spec: GroupSpec,
    pub elements: Vec<GroupElement>,
    pub order: usize,
    /// Rows form a Z-basis of N.
    pub lattice_basis: Vec<Vec<Rational>>,
    /// `[N : Z^n]`.
    pub index: BigInt,
    basis_inverse: Vec<Vec<Rational>>,
}

pub fn enumerate_group(spec: &GroupSpec) -> GroupData {
    let n = spec.n;
    let e = spec.exponent();
    let gens: Vec<Vec<u64>> = spec
        .generators
        .iter()
        .map(|g| g.a.iter().map(|x| x * (e / g.r)).collect())
        .collect();

    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![0; n]);
    queue.push_back(vec![0; n]);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next: Vec<u64> = cur.iter().zip(g).map(|(x, y)| (x + y) % e).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<GroupElement> = seen
        .into_iter()
        .map(|v| GroupElement {
            coords: v
                .iter()
                .map(|&x| Rational::new(BigInt::from(x), BigInt::from(e)))
                .collect(),
        })
        .collect();
    elements.sort();

    let scale = BigInt::from(e);
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = scale.clone();
            r
        })
        .collect();
    rows.extend(gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()));
    let (h, rank) = hnf(&IntMatrix::from_rows(&rows).expect("rectangular"));
    assert_eq!(rank, n, "N has full rank");
    let det = int_det(&h).expect("square");
    let index = num_traits::pow(scale.clone(), n) / &det;
    let lattice_basis: Vec<Vec<Rational>> = h
        .to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| Rational::new(x, scale.clone()))
                .collect()
        })
        .collect();
    let basis_inverse = linalg::invert(&lattice_basis).expect("basis is invertible");
    assert_eq!(
        index,
        BigInt::from(elements.len()),
        "[N : Z^n] must equal |G|"
    );
    GroupData {
        spec: spec.clone(),
        order: elements.len(),
        elements,
        lattice_basis,
        index,
        basis_inverse,
    }
}

impl GroupData {
    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[0]
    }

    /// Integer coordinates of `p` in the lattice basis, or `None` when `p`
    /// is not in N.
    pub fn lattice_coords(&self, p: &[Rational]) -> Option<Vec<BigInt>> {
        lattice_basis_coords(self, p)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.lattice_coords(p).is_some()
    }

    /// Primitive lattice point of N on the ray through `direction`.
    pub fn primitive_point(&self, direction: &[Rational]) -> Vec<Rational> {
        let v = linalg::clear_denominators(direction);
        let e = self.spec.exponent();
        for k in 1..=e {
            let t = Rational::new(BigInt::from(k), BigInt::from(e));
            let p: Vec<Rational> = v
                .iter()
                .map(|x| Rational::from_integer(x.clone()) * &t)
                .collect();
            if self.contains(&p) {
                return p;
            }
        }
        unreachable!("Z^n is contained in N")
    }
}

/// Solves `p = c . basis` for integer `c`.
pub fn lattice_basis_coords(gd: &GroupData, p: &[Rational]) -> Option<Vec<BigInt>> {
    if p.len() != gd.n() {
        return None;
    }
    let n = gd.n();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let c = (0..n).fold(Rational::zero(), |acc, i| {
            acc + &p[i] * &gd.basis_inverse[i][j]
        });
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// Non-identity elements of age 1, in canonical order.
pub fn junior_points(gd: &GroupData) -> Vec<GroupElement> {
    gd.elements
        .iter()
        .filter(|g| !g.is_identity() && age(g) == 1)
        .cloned()
        .collect()
}
