//! Monomials and their G-weights.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::group::GroupData;

const LETTERS: [char; 4] = ['x', 'y', 'z', 'w'];

/// `x_1^u_1 ... x_n^u_n`, ordered by total degree and then lexicographically
/// on the exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn times_var(&self, i: usize) -> Self {
        let mut e = self.exponents.clone();
        e[i] += 1;
        Self::new(e)
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        Self::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// Every monomial dividing `self`, including 1 and `self`.
    pub fn all_divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.n())];
        for &e in &self.exponents {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial::new).collect()
    }

    /// Exponent difference `self - other` as a Laurent exponent vector.
    pub fn difference(&self, other: &Monomial) -> Vec<i64> {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let short = self.n() <= LETTERS.len();
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if short {
                write!(f, "{}", LETTERS[i])?;
            } else {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse monomial {0:?}")]
pub struct MonomialParseError(pub String);

/// Parses `x^2zw`, `x*y^3`, `1`, or `x1^2*x5` (indexed variables).
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial, MonomialParseError> {
    let bad = || MonomialParseError(text.to_string());
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if s == ['1'] {
        return Ok(Monomial::one(n));
    }
    if s.is_empty() {
        return Err(bad());
    }
    let mut exps = vec![0u32; n];
    let mut i = 0;
    let number = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        s[start..*i].iter().collect::<String>().parse().ok()
    };
    while i < s.len() {
        let c = s[i];
        i += 1;
        let var = if c == 'x' && i < s.len() && s[i].is_ascii_digit() && n > LETTERS.len() {
            let k = number(&mut i).ok_or_else(bad)? as usize;
            if k == 0 || k > n {
                return Err(bad());
            }
            k - 1
        } else {
            match LETTERS.iter().position(|&l| l == c) {
                Some(k) if k < n && n <= LETTERS.len() => k,
                _ => return Err(bad()),
            }
        };
        let e = if i < s.len() && s[i] == '^' {
            i += 1;
            number(&mut i).ok_or_else(bad)?
        } else {
            1
        };
        exps[var] += e;
    }
    Ok(Monomial::new(exps))
}

/// Parses a comma-separated generator list such as `x^4, y, z, w^4`.
pub fn parse_monomial_list(text: &str, n: usize) -> Result<Vec<Monomial>, MonomialParseError> {
    text.split(',').map(|t| parse_monomial(t, n)).collect()
}

/// A character of G, recorded by its values on the generators:
/// `residues[j]` is the exponent of `e^(2 pi i / r_j)` for generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub residues: Vec<u64>,
}

impl Character {
    pub fn trivial(gd: &GroupData) -> Self {
        Self {
            residues: vec![0; gd.spec.generators.len()],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &Character, gd: &GroupData) -> Character {
        Character {
            residues: self
                .residues
                .iter()
                .zip(&other.residues)
                .zip(&gd.spec.generators)
                .map(|((a, b), g)| (a + b) % g.r)
                .collect(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residues.iter().map(ToString::to_string).collect();
        write!(f, "({})", r.join(","))
    }
}

/// `wt(m)`: residue of `sum_i u_i a_i^j` modulo `r_j` for each generator.
pub fn weight(gd: &GroupData, m: &Monomial) -> Character {
    Character {
        residues: gd
            .spec
            .generators
            .iter()
            .map(|g| {
                g.a.iter()
                    .zip(m.exponents())
                    .map(|(&a, &u)| a * u as u64 % g.r)
                    .sum::<u64>()
                    % g.r
            })
            .collect(),
    }
}

/// Order of a character in the character group.
pub fn char_order(gd: &GroupData, c: &Character) -> u64 {
    c.residues
        .iter()
        .zip(&gd.spec.generators)
        .fold(1, |l, (&res, g)| l.lcm(&(g.r / res.gcd(&g.r))))
}

/// `m / x_i` for every variable dividing `m`.
pub fn divisors_in(m: &Monomial) -> Vec<Monomial> {
    (0..m.n())
        .filter(|&i| m.exponents[i] > 0)
        .map(|i| {
            let mut e = m.exponents.clone();
            e[i] -= 1;
            Monomial::new(e)
        })
        .collect()
}

/// `char_order(wt(x_i))` for each variable: no member of a G-graph can
/// reach this exponent.
pub fn box_bounds(gd: &GroupData) -> Vec<u64> {
    (0..gd.n())
        .map(|i| char_order(gd, &weight(gd, &Monomial::var(gd.n(), i))))
        .collect()
}
