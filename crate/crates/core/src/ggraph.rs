//! G-graphs: order ideals of monomials in weight-bijection with Irr(G).
//!
//! Enumeration works on the finite set of *admissible* monomials, those whose
//! divisors all have pairwise distinct weights. Every member of a G-graph is
//! admissible, and admissible monomials automatically respect the box bound
//! `u_i < ord(wt(x_i))`. The search assigns a representative monomial to one
//! character at a time (choosing the character with the fewest viable
//! candidates), placing all divisors of the chosen monomial together with it.
//! Distinct choices for the same character give disjoint sets of G-graphs, so
//! each G-graph is produced exactly once.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::group::GroupData;
use crate::monomial::{divisors_in, weight, Character, Monomial};

pub const DEFAULT_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GGraphError {
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: usize, cap: usize },
}

/// Why a set of monomials fails to be a G-graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotOrderIdeal { member: Monomial, missing: Monomial },
    WrongSize { expected: usize, found: usize },
    RepeatedWeight(Monomial, Monomial),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotOrderIdeal { member, missing } => {
                write!(f, "not an order ideal: {member} is present but {missing} is not")
            }
            Violation::WrongSize { expected, found } => {
                write!(f, "has {found} monomials, |G| = {expected}")
            }
            Violation::RepeatedWeight(a, b) => write!(f, "{a} and {b} have the same weight"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GGraph {
    /// Members of the G-graph, sorted.
    pub monomials: Vec<Monomial>,
    /// Minimal generators of the complementary monomial ideal, sorted.
    pub a_gamma: Vec<Monomial>,
    pub wt_table: BTreeMap<Character, Monomial>,
}

impl GGraph {
    /// Builds the G-graph record from a set already known to be a G-graph.
    fn from_members(gd: &GroupData, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort();
        let wt_table = monomials
            .iter()
            .map(|m| (weight(gd, m), m.clone()))
            .collect();
        let a_gamma = minimal_generators_of(&monomials, gd.n());
        Self {
            monomials,
            a_gamma,
            wt_table,
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.binary_search(m).is_ok()
    }

    /// The ideal `(a, b, ...)` written with the minimal generators.
    pub fn ideal_string(&self) -> String {
        let gens: Vec<String> = self.a_gamma.iter().map(ToString::to_string).collect();
        format!("({})", gens.join(", "))
    }
}

impl fmt::Display for GGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.monomials.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}} ideal {}", members.join(", "), self.ideal_string())
    }
}

/// Checks the three defining conditions in order: order ideal, size, weights.
pub fn is_ggraph(gd: &GroupData, ms: &[Monomial]) -> Result<(), Violation> {
    let set: HashSet<&Monomial> = ms.iter().collect();
    let mut sorted: Vec<&Monomial> = set.iter().copied().collect();
    sorted.sort();
    for m in &sorted {
        if let Some(d) = divisors_in(m).into_iter().find(|d| !set.contains(d)) {
            return Err(Violation::NotOrderIdeal {
                member: (*m).clone(),
                missing: d,
            });
        }
    }
    if sorted.len() != gd.order {
        return Err(Violation::WrongSize {
            expected: gd.order,
            found: sorted.len(),
        });
    }
    let mut seen: HashMap<Character, &Monomial> = HashMap::new();
    for m in sorted {
        if let Some(prev) = seen.insert(weight(gd, m), m) {
            return Err(Violation::RepeatedWeight(prev.clone(), m.clone()));
        }
    }
    Ok(())
}

/// Builds the G-graph record for `ms`, or reports the violated condition.
pub fn ggraph_from_monomials(gd: &GroupData, ms: &[Monomial]) -> Result<GGraph, Violation> {
    is_ggraph(gd, ms)?;
    Ok(GGraph::from_members(gd, ms.to_vec()))
}

/// The complement `Gamma(I)` of a monomial ideal given by (possibly
/// redundant) generators, or `None` when the complement is infinite.
pub fn complement_of_ideal(generators: &[Monomial], n: usize) -> Option<Vec<Monomial>> {
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let pure = generators
            .iter()
            .filter(|g| {
                g.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| j == i || e == 0)
            })
            .map(|g| g.exponents()[i])
            .min()?;
        bounds.push(pure);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let m = Monomial::new(cur.clone());
        if !generators.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return Some(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn minimal_generators_of(members: &[Monomial], n: usize) -> Vec<Monomial> {
    let set: HashSet<&Monomial> = members.iter().collect();
    let mut out: BTreeSet<Monomial> = BTreeSet::new();
    for m in members {
        for i in 0..n {
            let c = m.times_var(i);
            if set.contains(&c) {
                continue;
            }
            if divisors_in(&c).iter().all(|d| set.contains(d)) {
                out.insert(c);
            }
        }
    }
    if members.is_empty() {
        out.insert(Monomial::one(n));
    }
    out.into_iter().collect()
}

/// `A_Gamma`: monomials outside the G-graph all of whose proper divisors are
/// inside it.
pub fn minimal_generators(gd: &GroupData, g: &GGraph) -> Vec<Monomial> {
    minimal_generators_of(&g.monomials, gd.n())
}

/// `wt_Gamma(m)`: the member of the G-graph with the same weight as `m`.
pub fn wt_gamma(gd: &GroupData, g: &GGraph, m: &Monomial) -> Monomial {
    g.wt_table
        .get(&weight(gd, m))
        .cloned()
        .expect("a G-graph realises every character")
}

struct Admissible {
    monomial: Monomial,
    character: usize,
    /// Indices of every divisor, the monomial itself included.
    divisors: Vec<usize>,
}

/// The admissible monomials and their dense character ids.
fn admissible_monomials(gd: &GroupData) -> (Vec<Admissible>, usize) {
    let n = gd.n();
    let mut ids: HashMap<Character, usize> = HashMap::new();
    let mut char_id = |c: Character| {
        let next = ids.len();
        *ids.entry(c).or_insert(next)
    };
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut out: Vec<Admissible> = Vec::new();
    let one = Monomial::one(n);
    index.insert(one.clone(), 0);
    out.push(Admissible {
        character: char_id(weight(gd, &one)),
        monomial: one,
        divisors: vec![0],
    });
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next_layer: BTreeSet<Monomial> = BTreeSet::new();
        for &k in &frontier {
            for i in 0..n {
                next_layer.insert(out[k].monomial.times_var(i));
            }
        }
        frontier.clear();
        for c in next_layer {
            if !divisors_in(&c).iter().all(|d| index.contains_key(d)) {
                continue;
            }
            let divs = c.all_divisors();
            let mut weights: HashSet<Character> = HashSet::with_capacity(divs.len());
            if !divs.iter().all(|d| weights.insert(weight(gd, d))) {
                continue;
            }
            let k = out.len();
            index.insert(c.clone(), k);
            let divisors: Vec<usize> = divs
                .iter()
                .map(|d| if *d == c { k } else { index[d] })
                .collect();
            out.push(Admissible {
                character: char_id(weight(gd, &c)),
                monomial: c,
                divisors,
            });
            frontier.push(k);
        }
    }
    (out, ids.len())
}

#[derive(Clone)]
struct Search<'a> {
    adm: &'a [Admissible],
    by_char: &'a [Vec<usize>],
    assign: Vec<Option<usize>>,
    assigned: usize,
}

impl Search<'_> {
    fn viable(&self, m: usize) -> bool {
        self.adm[m].divisors.iter().all(|&d| match self.assign[self.adm[d].character] {
            None => true,
            Some(x) => x == d,
        })
    }

    /// Unassigned character with the fewest viable candidates, with those
    /// candidates; `None` when some character has no candidate left.
    fn most_constrained(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for (ch, cands) in self.by_char.iter().enumerate() {
            if self.assign[ch].is_some() {
                continue;
            }
            let viable: Vec<usize> = cands.iter().copied().filter(|&m| self.viable(m)).collect();
            if viable.is_empty() {
                return None;
            }
            if best.as_ref().is_none_or(|b| viable.len() < b.len()) {
                let single = viable.len() == 1;
                best = Some(viable);
                if single {
                    break;
                }
            }
        }
        best
    }

    fn place(&mut self, m: usize) -> Vec<usize> {
        let mut newly = Vec::new();
        for &d in &self.adm[m].divisors {
            let ch = self.adm[d].character;
            if self.assign[ch].is_none() {
                self.assign[ch] = Some(d);
                newly.push(ch);
            }
        }
        self.assigned += newly.len();
        newly
    }

    fn unplace(&mut self, newly: Vec<usize>) {
        self.assigned -= newly.len();
        for ch in newly {
            self.assign[ch] = None;
        }
    }

    fn run(&mut self, out: &mut Vec<Vec<usize>>) {
        if self.assigned == self.assign.len() {
            out.push(self.assign.iter().map(|a| a.expect("complete")).collect());
            return;
        }
        let Some(cands) = self.most_constrained() else {
            return;
        };
        for m in cands {
            let newly = self.place(m);
            self.run(out);
            self.unplace(newly);
        }
    }
}

pub fn enumerate_ggraphs(gd: &GroupData) -> Result<Vec<GGraph>, GGraphError> {
    enumerate_ggraphs_with_cap(gd, DEFAULT_CAP)
}

/// Every G-graph of `gd`, sorted by member list.
pub fn enumerate_ggraphs_with_cap(gd: &GroupData, cap: usize) -> Result<Vec<GGraph>, GGraphError> {
    if gd.order > cap {
        return Err(GGraphError::TooLarge {
            order: gd.order,
            cap,
        });
    }
    let (adm, nchars) = admissible_monomials(gd);
    if nchars < gd.order {
        return Ok(Vec::new());
    }
    let mut by_char: Vec<Vec<usize>> = vec![Vec::new(); nchars];
    for (k, a) in adm.iter().enumerate() {
        by_char[a.character].push(k);
    }
    let root = Search {
        adm: &adm,
        by_char: &by_char,
        assign: vec![None; nchars],
        assigned: 0,
    };

    let Some(first) = root.most_constrained() else {
        return Ok(Vec::new());
    };
    let found: Vec<Vec<usize>> = first
        .par_iter()
        .flat_map_iter(|&m| {
            let mut s = root.clone();
            s.place(m);
            let mut out = Vec::new();
            s.run(&mut out);
            out
        })
        .collect();

    let mut graphs: Vec<GGraph> = found
        .into_iter()
        .map(|members| {
            GGraph::from_members(
                gd,
                members.into_iter().map(|k| adm[k].monomial.clone()).collect(),
            )
        })
        .collect();
    graphs.sort_by(|a, b| a.monomials.cmp(&b.monomials));
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, parse_group_spec, GroupSpec};
    use crate::monomial::{box_bounds, parse_monomial, parse_monomial_list};

    fn gd(s: &str) -> GroupData {
        enumerate_group(&parse_group_spec(s).unwrap())
    }

    fn ms(s: &str, n: usize) -> Vec<Monomial> {
        parse_monomial_list(s, n).unwrap()
    }

    #[test]
    fn a4_membership() {
        let g = gd("1/5(1,4)");
        assert!(is_ggraph(&g, &ms("1,y,y^2,y^3,y^4", 2)).is_ok());
        assert_eq!(
            is_ggraph(&g, &ms("1,x", 2)),
            Err(Violation::WrongSize {
                expected: 5,
                found: 2
            })
        );
        assert!(matches!(
            is_ggraph(&g, &ms("1,y^2", 2)),
            Err(Violation::NotOrderIdeal { .. })
        ));
        assert!(matches!(
            is_ggraph(&g, &ms("1,x,y,xy,x^2", 2)),
            Err(Violation::RepeatedWeight(..))
        ));
    }

    #[test]
    fn series_i_membership() {
        let g = enumerate_group(&GroupSpec::series_i(4));
        let mut members = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                members.push(Monomial::new(vec![i, 0, 0, j]));
            }
        }
        assert!(is_ggraph(&g, &members).is_ok());
        let gg = ggraph_from_monomials(&g, &members).unwrap();
        let mut expected = ms("x^4, y, z, w^4", 4);
        expected.sort();
        assert_eq!(gg.a_gamma, expected);
    }

    #[test]
    fn singular_family_membership() {
        let g = enumerate_group(&GroupSpec::singular_family(2));
        assert!(is_ggraph(&g, &ms("1,x,y,z", 4)).is_ok());
    }

    #[test]
    fn a4_enumeration() {
        let g = gd("1/5(1,4)");
        let all = enumerate_ggraphs(&g).unwrap();
        assert_eq!(all.len(), 5);
        let ideals: BTreeSet<Vec<Monomial>> = all.iter().map(|g| g.a_gamma.clone()).collect();
        let expected: BTreeSet<Vec<Monomial>> = [
            "x, y^5",
            "x^2, xy, y^4",
            "x^3, xy, y^3",
            "x^4, xy, y^2",
            "x^5, y",
        ]
        .into_iter()
        .map(|s| {
            let mut v = ms(s, 2);
            v.sort();
            v
        })
        .collect();
        assert_eq!(ideals, expected);
    }

    #[test]
    fn a4_first_graph_generators() {
        let g = gd("1/5(1,4)");
        let gamma = ggraph_from_monomials(&g, &ms("1,y,y^2,y^3,y^4", 2)).unwrap();
        assert_eq!(minimal_generators(&g, &gamma), ms("x, y^5", 2));
        let x = parse_monomial("x", 2).unwrap();
        let y5 = parse_monomial("y^5", 2).unwrap();
        assert_eq!(wt_gamma(&g, &gamma, &y5), Monomial::one(2));
        assert_eq!(wt_gamma(&g, &gamma, &x), parse_monomial("y^4", 2).unwrap());
        for m in &gamma.monomials {
            assert_eq!(&wt_gamma(&g, &gamma, m), m);
        }
    }

    #[test]
    fn trivial_group() {
        let g = gd("1/1(0,0,0)");
        let all = enumerate_ggraphs(&g).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].monomials, vec![Monomial::one(3)]);
        assert_eq!(all[0].a_gamma, ms("z, y, x", 3));
        assert!(all[0].a_gamma.is_sorted());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_ggraphs(&gd("1/7(1,2,4)")).unwrap().len(), 7);
        assert_eq!(
            enumerate_ggraphs(&enumerate_group(&GroupSpec::series_i(4)))
                .unwrap()
                .len(),
            16
        );
        assert_eq!(
            enumerate_ggraphs(&enumerate_group(&GroupSpec::series_i(3)))
                .unwrap()
                .len(),
            13
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = enumerate_group(&GroupSpec::series_i(4));
        assert_eq!(
            enumerate_ggraphs_with_cap(&g, 10).unwrap_err(),
            GGraphError::TooLarge { order: 16, cap: 10 }
        );
    }

    #[test]
    fn members_respect_the_box() {
        let g = gd("1/7(1,2,4)");
        let bounds = box_bounds(&g);
        for gg in enumerate_ggraphs(&g).unwrap() {
            for m in &gg.monomials {
                assert!(m.exponents().iter().zip(&bounds).all(|(&e, &b)| (e as u64) < b));
            }
        }
    }

    #[test]
    fn ideal_complements() {
        let gens = ms("x^4, y, z^4, w^2, x^2w, z^3x^2, wz", 4);
        let gamma = complement_of_ideal(&gens, 4).unwrap();
        assert_eq!(gamma.len(), 16);
        assert!(complement_of_ideal(&ms("x^3y, z^3, w^2", 4), 4).is_none());
    }
}
