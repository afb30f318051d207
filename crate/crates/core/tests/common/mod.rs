#![allow(dead_code)]

use ghilb::group::{enumerate_group, parse_group_spec, GroupData, GroupSpec};
use ghilb::monomial::{parse_monomial_list, Monomial};

pub fn gd(spec: &str) -> GroupData {
    enumerate_group(&parse_group_spec(spec).unwrap())
}

/// Groups exercised throughout the integration tests.
pub fn test_groups() -> Vec<GroupData> {
    let mut specs: Vec<GroupSpec> = [
        "1/1(0,0)",
        "1/1(0,0,0,0)",
        "1/5(1,4)",
        "1/6(1,5)",
        "1/3(1,1,1)",
        "1/7(1,2,4)",
        "1/6(1,2,3)",
        "1/8(1,3,4)",
        "1/9(1,2,6)",
        "1/4(1,1,1,1)",
        "1/2(1,1,0,0); 1/2(0,0,1,1)",
        "1/6(1,2,1,2)",
    ]
    .iter()
    .map(|s| parse_group_spec(s).unwrap())
    .collect();
    specs.extend([3, 4].map(GroupSpec::series_i));
    specs.push(GroupSpec::series_ii(2));
    specs.extend((1..=4).map(GroupSpec::singular_family));
    specs.iter().map(enumerate_group).collect()
}

pub fn ideal(text: &str, n: usize) -> Vec<Monomial> {
    parse_monomial_list(text, n).unwrap()
}

/// Swaps two variables in every monomial.
pub fn swap(ms: &[Monomial], i: usize, j: usize) -> Vec<Monomial> {
    ms.iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.swap(i, j);
            Monomial::new(e)
        })
        .collect()
}
