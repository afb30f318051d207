//! End-to-end acceptance run: one PASS/FAIL line per criterion, then a
//! failure if any criterion failed.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{ideal, swap};
use ghilb::certificate::singular_certificate;
use ghilb::fan::{build_fan_g, cone_of, dual_contains, is_crepant, is_smooth, refines, standard_simplex_volume, validate_fan, Fan, Provenance};
use ghilb::ggraph::{complement_of_ideal, enumerate_ggraphs, ggraph_from_monomials, is_ggraph};
use ghilb::group::{enumerate_group, junior_points, GroupData, GroupSpec};
use ghilb::linalg::{int, Halfspace};
use ghilb::monomial::{box_bounds, Monomial};
use ghilb::report::FanDocument;
use ghilb::resolution::{series_i_fan, series_i_resolutions, series_ii_fan};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, budget: Duration) -> Outcome {
    let t = start.elapsed();
    ensure!(t <= budget, "took {t:?}, budget {budget:?}");
    Ok(())
}

fn graph_sets(gd: &GroupData) -> BTreeSet<Vec<Monomial>> {
    enumerate_ggraphs(gd).unwrap().into_iter().map(|g| g.monomials).collect()
}

fn complement(gens: &[Monomial]) -> Vec<Monomial> {
    complement_of_ideal(gens, gens[0].n()).expect("finite complement")
}

fn normals(hs: &[Halfspace]) -> Vec<Vec<num_bigint::BigInt>> {
    let mut v: Vec<_> = hs.iter().map(Halfspace::integer_normal).collect();
    v.sort();
    v
}

fn check_valid_smooth_crepant(gd: &GroupData, f: &Fan, crepant: bool) -> Outcome {
    let rep = is_crepant(gd, f);
    ensure!(rep.valid, "fan invalid: {:?}", rep.validation.failure);
    ensure!(rep.smooth, "non-smooth cones {:?}", rep.non_smooth_cones);
    ensure!(rep.crepant == crepant, "crepant = {}, expected {crepant}", rep.crepant);
    Ok(())
}

fn a4() -> Outcome {
    let start = Instant::now();
    let gd = common::gd("1/5(1,4)");
    let expected: BTreeSet<Vec<Monomial>> = ["x, y^5", "x^2, xy, y^4", "x^3, xy, y^3", "x^4, xy, y^2", "x^5, y"]
        .iter()
        .map(|s| complement(&ideal(s, 2)))
        .collect();
    let graphs = graph_sets(&gd);
    ensure!(graphs == expected, "G-graphs differ: {graphs:?}");
    let g1 = ggraph_from_monomials(&gd, &complement(&ideal("x, y^5", 2))).unwrap();
    let c = cone_of(&gd, &g1);
    // 5 w_y >= 0 and w_x - 4 w_y >= 0, as primitive normals
    ensure!(
        normals(c.halfspaces()) == vec![vec![int(0), int(1)], vec![int(1), int(-4)]],
        "sigma_1 H-rep {:?}",
        normals(c.halfspaces())
    );
    let f = build_fan_g(&gd).unwrap();
    ensure!(f.len() == 5, "{} cones", f.len());
    check_valid_smooth_crepant(&gd, &f, true)?;
    within(start, Duration::from_secs(1))
}

fn seven() -> Outcome {
    let start = Instant::now();
    let gd = common::gd("1/7(1,2,4)");
    let jp: Vec<String> = junior_points(&gd).iter().map(ToString::to_string).collect();
    ensure!(jp == ["1/7(1,2,4)", "1/7(2,4,1)", "1/7(4,1,2)"], "junior points {jp:?}");
    let g1 = ggraph_from_monomials(&gd, &complement(&ideal("x^7, y, z", 3))).unwrap();
    let c = cone_of(&gd, &g1);
    let expected = normals(&[
        Halfspace::from_integers(&[int(1), int(0), int(0)]).unwrap(),
        Halfspace::from_integers(&[int(-2), int(1), int(0)]).unwrap(),
        Halfspace::from_integers(&[int(-4), int(0), int(1)]).unwrap(),
    ]);
    ensure!(normals(c.halfspaces()) == expected, "sigma_1 H-rep {:?}", normals(c.halfspaces()));
    let f = build_fan_g(&gd).unwrap();
    ensure!(f.len() == 7, "{} cones", f.len());
    check_valid_smooth_crepant(&gd, &f, true)?;
    within(start, Duration::from_secs(1))
}

fn series_i_r4() -> Outcome {
    let start = Instant::now();
    let gd = enumerate_group(&GroupSpec::series_i(4));
    let graphs = graph_sets(&gd);
    ensure!(graphs.len() == 16, "{} G-graphs", graphs.len());
    let listed = [
        "x^4, y, z, w^4",
        "x^4, y, z^4, w^2, x^2w, z^3x^2, wz",
        "x^4, y, z^3, w^2, wz",
        "x^2, y, z^2, w^4",
        "x^4, y, z^4, w",
        "x^4, y, z^2, w^4, x^2z, x^2w^3, zw",
        "x^4, y, z^2, w^3, wz",
        "x^2, y, z^4, w^2",
    ];
    let mut expected = BTreeSet::new();
    for s in listed {
        let gens = ideal(s, 4);
        expected.insert(complement(&gens));
        expected.insert(complement(&swap(&gens, 0, 1)));
    }
    ensure!(graphs == expected, "computed ideals differ from the listed ones");
    let f = build_fan_g(&gd).unwrap();
    ensure!(f.len() == 16, "{} cones", f.len());
    check_valid_smooth_crepant(&gd, &f, true)?;
    within(start, Duration::from_secs(5))
}

fn series_i_r3() -> Outcome {
    let start = Instant::now();
    let gd = enumerate_group(&GroupSpec::series_i(3));
    let n = enumerate_ggraphs(&gd).unwrap().len();
    ensure!(n == 13, "{n} G-graphs");
    let hilb = build_fan_g(&gd).unwrap();
    check_valid_smooth_crepant(&gd, &hilb, false)?;
    let ys = series_i_resolutions(3).map_err(|e| e.to_string())?;
    let mut refined = Vec::new();
    let mut other = Vec::new();
    for y in &ys {
        if refines(&hilb, &y.fan).map_err(|e| e.to_string())? {
            refined.push(&y.fan);
        } else {
            other.push(&y.fan);
        }
    }
    ensure!(refined.len() >= 2, "only {} resolutions are refined", refined.len());
    ensure!(!other.is_empty(), "every resolution is refined");
    let (y1, y2, y3) = (refined[0], refined[1], other[0]);
    ensure!(y1 != y2 && y2 != y3 && y1 != y3, "Y1..Y3 are not distinct");
    ensure!(refines(&hilb, y1).unwrap() && refines(&hilb, y2).unwrap(), "Y1/Y2 not refined");
    ensure!(!refines(&hilb, y3).unwrap(), "Y3 refined");
    within(start, Duration::from_secs(5))
}

fn junior_counts() -> Outcome {
    for r in [4u64, 6, 8] {
        let gd = enumerate_group(&GroupSpec::series_i(r));
        let k = junior_points(&gd).len() as u64;
        ensure!(k == r * r / 4 + r - 1, "r={r}: {k} junior points");
    }
    Ok(())
}

fn series_i_constructions() -> Outcome {
    for r in [3u64, 4, 5, 6] {
        let y = series_i_fan(r).map_err(|e| format!("r={r}: {e}"))?;
        let gd = &y.fan.group;
        ensure!(validate_fan(gd, &y.fan).is_valid(), "r={r}: invalid");
        check_valid_smooth_crepant(gd, &y.fan, true).map_err(|e| format!("r={r}: {e}"))?;
        ensure!(y.fan.len() as u64 == r * r, "r={r}: {} cones", y.fan.len());
    }
    Ok(())
}

fn series_ii_constructions() -> Outcome {
    let start = Instant::now();
    let mut runs = vec![(2u64, 1u8)];
    runs.extend((1..=3).map(|ax| (3, ax)));
    for (a, axis) in runs {
        let y = series_ii_fan(a, axis).map_err(|e| format!("a={a} axis={axis}: {e}"))?;
        check_valid_smooth_crepant(&y.fan.group, &y.fan, true)?;
        let mut cells = [0u64; 4];
        for p in &y.fan.provenance {
            let Provenance::Construction(label) = p else {
                return Err(format!("unexpected provenance {p}"));
            };
            let slot = if label.starts_with("face-pyramid") {
                0
            } else if label.starts_with("edge-pyramid") {
                1
            } else if label.starts_with("vertex-pyramid") {
                2
            } else {
                3
            };
            cells[slot] += 1;
        }
        let k = a - 1;
        ensure!(cells == [4, 6 * k, 4 * k * k, k * k * k], "a={a} axis={axis}: cells {cells:?}");
        let total: u64 = cells.iter().sum();
        ensure!(total == 1 + a + a * a + a * a * a, "a={a} axis={axis}: {total} cells");
        ensure!(y.fan.len() as u64 == total, "a={a} axis={axis}: {} cones", y.fan.len());
    }
    within(start, Duration::from_secs(30))
}

fn series_ii_hilb() -> Outcome {
    let start = Instant::now();
    let gd = enumerate_group(&GroupSpec::series_ii(3));
    let f = build_fan_g(&gd).unwrap();
    ensure!(f.len() == 44, "{} cones", f.len());
    check_valid_smooth_crepant(&gd, &f, false)?;
    for axis in 1..=3 {
        let y = series_ii_fan(3, axis).map_err(|e| e.to_string())?;
        ensure!(refines(&f, &y.fan).map_err(|e| e.to_string())?, "axis {axis} not refined");
    }
    within(start, Duration::from_secs(180))
}

fn singular_family() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in 1..=3 {
        let c = singular_certificate(m);
        if let Err(v) = &c.ggraph_check {
            failures.push(format!("m={m}: not a G-graph ({v})"));
        }
        if c.smooth != Some(false) {
            failures.push(format!("m={m}: the cone of Gamma(I) is smooth"));
        }
        for d in c.dual_checks.iter().filter(|d| !d.contained) {
            failures.push(format!("m={m}: {} not in the dual cone", d.name));
        }
        if !c.relation_holds {
            failures.push(format!("m={m}: X + W != Y + Z"));
        }
        // the same checks, through the public pieces directly
        let members = complement(&c.ideal);
        let gd = &c.group;
        ensure!(is_ggraph(gd, &members).is_ok() == c.ggraph_check.is_ok(), "inconsistent G-graph check");
        if let Ok(g) = ggraph_from_monomials(gd, &members) {
            let cone = cone_of(gd, &g);
            ensure!(Some(is_smooth(gd, &cone)) == c.smooth, "inconsistent smoothness");
            for d in &c.dual_checks {
                ensure!(dual_contains(gd, &cone, &d.exponent) == d.contained, "inconsistent dual check");
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn property_suites() -> Outcome {
    let mut groups = common::test_groups();
    groups.push(enumerate_group(&GroupSpec::series_ii(3)));
    for gd in &groups {
        let bounds = box_bounds(gd);
        let graphs = enumerate_ggraphs(gd).unwrap();
        for g in &graphs {
            for m in &g.monomials {
                ensure!(
                    m.exponents().iter().zip(&bounds).all(|(e, b)| (*e as u64) < *b),
                    "{}: {m} outside the box",
                    gd.spec
                );
            }
        }
        let f = build_fan_g(gd).unwrap();
        let v = validate_fan(gd, &f);
        ensure!(v.is_valid(), "{}: {:?}", gd.spec, v.failure);
        ensure!(v.support_volume == Some(standard_simplex_volume(gd.n())), "{}: support", gd.spec);
        let doc = FanDocument::from_fan(&f);
        let back = FanDocument::from_json(&doc.to_json()).map_err(|e| e.to_string())?;
        ensure!(back == doc, "{}: JSON round trip", gd.spec);
        ensure!(back.to_fan().map_err(|e| e.to_string())? == f, "{}: fan round trip", gd.spec);
    }
    // (b), enumeration against the brute-force oracle, runs in tests/oracle.rs
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("A4 G-graphs, cone and fan", a4),
        ("1/7(1,2,4) junior points, cone and fan", seven),
        ("series i, r=4: sixteen G-graphs, crepant fan", series_i_r4),
        ("series i, r=3: thirteen G-graphs, refinement pattern", series_i_r3),
        ("series i junior-point count", junior_counts),
        ("series i constructions for r=3..6", series_i_constructions),
        ("series ii constructions", series_ii_constructions),
        ("series ii, a=3: forty-four cones, refines all axis fans", series_ii_hilb),
        ("singular family certificates for m=1..3", singular_family),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({t:.2?})", i + 1),
            Err(e) => {
                println!("criterion {:>2}: FAIL  {name} ({t:.2?}): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
