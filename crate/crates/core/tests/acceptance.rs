//! Acceptance criteria, one line each:
//!
//! `criterion N  PASS|FAIL  tolerance=exact  time/limit  detail`
//!
//! Two criteria fail on the published data and are reported as FAIL. For
//! those the binary still checks that the difference is exactly the one on
//! record; the process exits nonzero only on an unexpected result.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use rbalg::catalog::{self, DOCUMENTED_DISCREPANCIES, DOCUMENTED_TARGET_DISCREPANCIES};
use rbalg::classify::{is_isomorphic, transports};
use rbalg::constructions::induced_pre_lie;
use rbalg::reproduce::{reference_lie_algebra, reproduce, reproduce_entries, Outcome, Report, ReproduceOptions, TableId};
use rbalg::{
    buchberger, classification_cover, family_verify, generate_system, grid_enumerate, ideal_member, is_rota_baxter,
    solve_zero_dim, Algebra, Budget, GaussRat, MonomialOrder, Operator, PolySystem, Poly, Scalar, ZeroDimResult,
};

use common::{check_identities, pool, small_value, specialize};

/// Result of one criterion.
struct Verdict {
    pass: bool,
    detail: String,
    /// A FAIL that matches the documented finding exactly.
    expected_failure: bool,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Verdict {
            pass: true,
            detail: detail.into(),
            expected_failure: false,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict {
            pass: false,
            detail: detail.into(),
            expected_failure: false,
        }
    }

    fn documented(detail: impl Into<String>) -> Self {
        Verdict {
            pass: false,
            detail: detail.into(),
            expected_failure: true,
        }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Verdict::pass(detail)
        } else {
            Verdict::fail(detail)
        }
    }
}

fn one() -> Scalar {
    Scalar::one()
}

fn entry(label: &str) -> catalog::CatalogEntry {
    catalog::load_unverified(label).unwrap()
}

fn solutions(a: &Algebra) -> Vec<Operator> {
    let system = generate_system(a, &one());
    match solve_zero_dim(&system, &Budget::default()).unwrap() {
        ZeroDimResult::Points(points) => points
            .iter()
            .map(|p| Operator::symbolic(a.dim(), "r").substitute(p).unwrap())
            .collect(),
        other => panic!("{}: {}", a.label().unwrap_or("?"), other),
    }
}

fn gauss(dim: usize, values: &[(i64, i64, i64)]) -> Operator {
    // (re numerator, im numerator, common denominator)
    let v = values
        .iter()
        .map(|&(re, im, d)| &GaussRat::frac(re, d) + &(&GaussRat::frac(im, d) * &GaussRat::i()))
        .collect();
    Operator::from_gauss(dim, v)
}

fn c1() -> Verdict {
    let d1 = catalog::load("D1").unwrap().algebra;
    let sols = solutions(&d1);
    let expected = [Operator::zero(1), Operator::identity(1)];
    Verdict::check(
        sols.len() == 2 && expected.iter().all(|e| sols.contains(e)),
        format!("RB(D1) = {:?}", sols.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
    )
}

fn c2() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for l in ["A1", "A2", "A3", "A4", "A5"] {
        let reports = catalog::verify_rows(&entry(l)).unwrap();
        let bad: Vec<String> = reports.iter().filter(|r| !r.verified()).map(|r| r.to_string()).collect();
        ok &= bad.is_empty();
        notes.extend(bad);
    }
    let grid = [GaussRat::from_int(-1), GaussRat::from_int(0), GaussRat::from_int(1)];
    for (l, total) in [("A1", 12), ("A2", 4)] {
        let e = catalog::load(l).unwrap();
        let cover = classification_cover(&e.algebra, &e.families, &grid, &Budget::default()).unwrap();
        let each_once = cover.hits.iter().all(|(_, n)| *n == 1);
        ok &= cover.total == total && cover.complete() && each_once && cover.never_hit.is_empty();
        notes.push(format!(
            "{} grid {{-1,0,1}}: {} solutions, {} families, unmatched {}",
            l,
            cover.total,
            cover.hits.len(),
            cover.unmatched.len()
        ));
    }
    Verdict::check(ok, notes.join("; "))
}

fn c3() -> Verdict {
    let b6 = catalog::load_unverified("B6").unwrap().algebra;
    let sols = solutions(&b6);
    let claimed = [Operator::zero(2), Operator::identity(2)];
    if sols.len() == 2 && claimed.iter().all(|c| sols.contains(c)) {
        return Verdict::pass("RB(B6) = {0, id}");
    }
    let extra: BTreeSet<String> = sols.iter().filter(|s| !claimed.contains(s)).map(|s| s.to_string()).collect();
    let on_record: BTreeSet<String> = [
        gauss(2, &[(0, 0, 1), (0, 0, 1), (0, 1, 1), (1, 0, 1)]),
        gauss(2, &[(0, 0, 1), (0, 0, 1), (0, -1, 1), (1, 0, 1)]),
        gauss(2, &[(1, 0, 1), (0, 0, 1), (0, 1, 1), (0, 0, 1)]),
        gauss(2, &[(1, 0, 1), (0, 0, 1), (0, -1, 1), (0, 0, 1)]),
        gauss(2, &[(1, 0, 2), (0, 1, 2), (0, -1, 2), (1, 0, 2)]),
        gauss(2, &[(1, 0, 2), (0, -1, 2), (0, 1, 2), (1, 0, 2)]),
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let all_rb = sols.iter().all(|s| is_rota_baxter(&b6, s, &one()));
    let detail = format!(
        "{} solutions over Q(i); extra: {}",
        sols.len(),
        extra.iter().cloned().collect::<Vec<_>>().join(" ")
    );
    if extra == on_record && all_rb && claimed.iter().all(|c| sols.contains(c)) {
        Verdict::documented(detail)
    } else {
        Verdict::fail(format!("{} (differs from the recorded finding)", detail))
    }
}

fn c4() -> Verdict {
    let mut count = 0;
    let mut bad = Vec::new();
    for l in ["B3", "B4", "B5", "B6"] {
        for r in catalog::verify_rows(&entry(l)).unwrap() {
            count += 1;
            if !r.verified() {
                bad.push(r.to_string());
            }
        }
    }
    Verdict::check(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} rows verified with k, l symbolic", count)
        } else {
            bad.join("; ")
        },
    )
}

fn c5() -> Verdict {
    let budget = Budget::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let a = catalog::load_unverified(&format!("type-II({})", n)).unwrap().algebra;
        let system = generate_system(&a, &one());
        let r = Operator::symbolic(n, "r");
        let idem: Vec<Poly> = r
            .square()
            .sub(&r)
            .entries()
            .iter()
            .map(|s| s.as_poly().expect("polynomial entries").clone())
            .filter(|p| !p.is_zero())
            .collect();
        let residual_gb = buchberger(&system, MonomialOrder::DegRevLex, &budget).unwrap();
        let idem_system = PolySystem::with_variables(system.variables.clone(), idem.clone());
        let idem_gb = buchberger(&idem_system, MonomialOrder::DegRevLex, &budget).unwrap();
        let forward = system.nonzero_generators().all(|g| ideal_member(&idem_gb, g));
        let backward = idem.iter().all(|p| ideal_member(&residual_gb, p));
        ok &= forward && backward;
        notes.push(format!("n={}: residuals in (R^2-R) {}, (R^2-R) in residuals {}", n, forward, backward));
    }
    Verdict::check(ok, notes.join("; "))
}

fn c6() -> Verdict {
    let grid = [
        GaussRat::from_int(-1),
        GaussRat::from_int(0),
        GaussRat::from_int(1),
        GaussRat::frac(1, 2),
        GaussRat::from_int(2),
    ];
    let mut total = 0;
    let mut bad = Vec::new();
    for l in ["A1", "A2", "A3", "A4", "A5", "B1", "B2"] {
        let a = catalog::load(l).unwrap().algebra;
        for r in grid_enumerate(&a, &one(), &grid, &Budget::default()).unwrap() {
            total += 1;
            match induced_pre_lie(&a, &r, &one()) {
                Ok(p) if p.is_associative() => {}
                Ok(_) => bad.push(format!("{} with R = {}: not associative", l, r)),
                Err(e) => bad.push(format!("{} with R = {}: {}", l, r, e)),
            }
        }
    }
    Verdict::check(
        bad.is_empty(),
        format!("{} operators, {} non-associative {}", total, bad.len(), bad.join("; ")),
    )
}

fn summary(report: &Report) -> String {
    let count = |o| report.rows.iter().filter(|r| r.outcome == o).count();
    format!(
        "{} pass, {} fail, {} documented",
        count(Outcome::Pass),
        count(Outcome::Fail),
        count(Outcome::Documented)
    )
}

fn c7() -> Verdict {
    let report = reproduce(TableId::Prop41, &ReproduceOptions::default()).unwrap();
    let all_pass = report.rows.iter().all(|r| r.outcome == Outcome::Pass);
    let covers = report.rows.iter().filter(|r| r.check == "cover").count();
    Verdict::check(all_pass && covers == 12, format!("{}; {} grid covers", summary(&report), covers))
}

fn c8(report: &Report) -> Verdict {
    let documented_rows: BTreeSet<&str> = DOCUMENTED_DISCREPANCIES
        .iter()
        .chain(DOCUMENTED_TARGET_DISCREPANCIES)
        .map(|(f, _)| *f)
        .collect();
    let mut notes = Vec::new();
    let mut ok = report.failures().next().is_none();
    for r in report.rows.iter().filter(|r| r.outcome == Outcome::Documented) {
        // covers of T3 are documented through the T3.1 row
        let listed = documented_rows.contains(r.row.as_str()) || (r.section == "T3" && r.check == "cover");
        ok &= listed;
        notes.push(format!("{} {} {}", r.row, r.check, if listed { "(listed)" } else { "(NOT LISTED)" }));
    }
    let mut single = 0;
    for n in &report.normalizations {
        if n.targets.len() == 1 {
            single += 1;
            let on_list = DOCUMENTED_TARGET_DISCREPANCIES.iter().any(|(f, _)| *f == n.family);
            let agrees = n.generic_labels().iter().all(|l| {
                l.as_deref()
                    .is_some_and(|l| catalog::same_class(l, &n.targets[0]))
            });
            ok &= agrees || on_list;
        } else if n.targets.len() > 1 {
            let strata: Vec<String> = n.strata().iter().map(|(l, k)| format!("{}x{}", l, k)).collect();
            println!("    {} targets {} strata {}", n.family, n.targets.join("/"), strata.join(" "));
        }
    }
    notes.insert(0, format!("{}; {} single-target rows", summary(report), single));
    Verdict::check(ok, notes.join("; "))
}

fn c9(report: &Report) -> Verdict {
    let labels = report.nonassociative_labels();
    let claimed: BTreeSet<String> = (1..=10).map(|k| format!("N{}", k)).collect();
    let on_record: BTreeSet<String> = ["?", "N1", "N2", "N3", "N10", "N5", "N6", "N7", "N9"]
        .iter()
        .map(|s| s.to_string())
        .collect();

    // commutator algebras: each matches the reference, and all pairs are isomorphic
    let cor45 = reproduce(TableId::Cor45, &ReproduceOptions::default()).unwrap();
    let lie_ok = cor45.rows.len() == 10 && cor45.rows.iter().all(|r| r.outcome == Outcome::Pass);
    let lies: Vec<Algebra> = (1..=10)
        .map(|k| entry(&format!("N{}", k)).algebra.commutator_algebra().unwrap())
        .collect();
    let mut pairs = 0;
    for (i, x) in lies.iter().enumerate() {
        for y in &lies[i + 1..] {
            if let Some(t) = is_isomorphic(x, y).unwrap() {
                if transports(x, y, &t) {
                    pairs += 1;
                }
            }
        }
    }
    let reference = reference_lie_algebra();
    let lie_ok = lie_ok && pairs == 45 && is_isomorphic(&lies[0], &reference).unwrap().is_some();
    let shown = labels.iter().cloned().collect::<Vec<_>>().join(" ");
    let detail = format!("non-associative labels {{{}}}; {} of 45 Lie pairs with witnesses", shown, pairs);
    if labels == claimed && lie_ok {
        Verdict::pass(detail)
    } else if labels == on_record && lie_ok {
        Verdict::documented(format!("{}; N4 and N8 not reached", detail))
    } else {
        Verdict::fail(detail)
    }
}

fn c10(prop42: &Report) -> Verdict {
    let rb_b1 = reproduce(TableId::RbB1, &ReproduceOptions::default()).unwrap();
    let dim2 = rb_b1.commutative_labels();
    let dim3 = prop42.commutative_labels();
    let want2: BTreeSet<String> = ["A1", "A2", "A3"].iter().map(|s| s.to_string()).collect();
    let want3: BTreeSet<String> = (1..=12)
        .filter(|k| ![4, 11, 12].contains(k))
        .map(|k| format!("C{}", k))
        .collect();
    let fmt = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
    Verdict::check(
        dim2 == want2 && dim3 == want3 && rb_b1.passed(),
        format!("dim 2 {{{}}}; dim 3 {{{}}}", fmt(&dim2), fmt(&dim3)),
    )
}

fn c11() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    let alpha = GaussRat::frac(3, 2);
    for case in pool() {
        for p in &case.points {
            let r = case.family.specialize(p).unwrap();
            checked += 1;
            if let Err(e) = check_identities(&case.algebra, &r, &alpha) {
                bad.push(format!("{}: {}", case.family.name, e));
            }
        }
    }
    let families = pool().len();
    let mut runner = TestRunner::deterministic();
    let strategy = (
        0usize..10_000,
        0usize..64,
        proptest::collection::vec(small_value(), 4),
        small_value(),
    );
    let mut random = 0;
    let mut draws = 0;
    while random < 500 && draws < 50_000 {
        draws += 1;
        let (idx, seed, values, alpha) = strategy.new_tree(&mut runner).unwrap().current();
        let case = &pool()[idx % families];
        let Some(r) = specialize(case, seed, &values) else {
            continue;
        };
        random += 1;
        if let Err(e) = check_identities(&case.algebra, &r, &alpha) {
            bad.push(format!("{} with R = {}: {}", case.family.name, r, e));
        }
    }
    Verdict::check(
        bad.is_empty() && random == 500,
        format!(
            "{} families, {} catalog points, {} random specializations, {} failures {}",
            families,
            checked,
            random,
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn c12(prop42: &Report) -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;

    // the documented row is surfaced with its residual, not hidden
    let t31 = prop42.rows.iter().find(|r| r.row == "T3.1" && r.check == "verify");
    let surfaced = t31.is_some_and(|r| r.outcome == Outcome::Documented && r.detail.contains("r31^2"));
    ok &= surfaced;
    notes.push(format!("T3.1 reported with residual {}", surfaced));

    // corrected row: r31 = r32 = 0
    let t3 = catalog::load("T3").unwrap();
    let (rejected, _) = t3.rejected.iter().find(|(f, _)| f.name == "T3.1").unwrap().clone();
    let mut fixed = rejected;
    fixed.relations.push(Poly::var("r31"));
    fixed.relations.push(Poly::var("r32"));
    let holds = family_verify(&t3.algebra, &fixed, &one()).unwrap().holds();
    ok &= holds;
    notes.push(format!("T3.1 with r31 = r32 = 0 verifies {}", holds));
    let mut corrected = t3.clone();
    corrected.families.insert(0, fixed);
    for lambda in [1, 2] {
        let point = [(rbalg::Symbol::new("lambda"), GaussRat::from_int(lambda))].into_iter().collect();
        let at = corrected.at_parameters(&point).unwrap();
        let cover = classification_cover(&at.algebra, &at.families, &rbalg::polysolve::default_grid(), &Budget::default())
            .unwrap();
        ok &= cover.complete();
        notes.push(format!("T3 cover at lambda={} unmatched {}", lambda, cover.unmatched.len()));
    }

    // a corrupted row that is not on the list fails and names the residual
    let text = "[entry A1]\ndim 2; field gaussian-rational\nkind associative\n1 1 1 1\n2 2 2 1\n\n\
                [family A1.1]\ndim 2\n0 0\n0 0\n\n\
                [family A1.4]\ndim 2\n1 0\n2 1\n";
    let entries = catalog::parse_catalog(text).unwrap();
    let report = reproduce_entries(TableId::Prop31, &entries, &ReproduceOptions::default()).unwrap();
    let named = report
        .rows
        .iter()
        .any(|r| r.row == "A1.4" && r.outcome == Outcome::Fail && r.detail.contains("reduced residual"));
    ok &= named && !report.passed();
    notes.push(format!("corrupted A1.4 named with residual {}", named));
    Verdict::check(ok, notes.join("; "))
}

fn main() {
    let limits = [1, 10, 5, 10, 30, 30, 120, 300, 60, 60, 120, 60];
    let mut unexpected = Vec::new();
    let mut prop42: Option<Report> = None;
    let mut prop42_time = Duration::ZERO;
    println!("acceptance criteria (tolerance: exact arithmetic, no floating point)");
    for (k, limit) in limits.iter().enumerate() {
        let n = k + 1;
        let start = Instant::now();
        if (8..=10).contains(&n) && prop42.is_none() {
            prop42 = Some(reproduce(TableId::Prop42, &ReproduceOptions::default()).unwrap());
            prop42_time = start.elapsed();
        }
        let report = prop42.as_ref();
        let v = match n {
            1 => c1(),
            2 => c2(),
            3 => c3(),
            4 => c4(),
            5 => c5(),
            6 => c6(),
            7 => c7(),
            8 => c8(report.unwrap()),
            9 => c9(report.unwrap()),
            10 => c10(report.unwrap()),
            11 => c11(),
            _ => c12(report.unwrap()),
        };
        // criteria 9 and 10 share the table run timed under 8
        let mut elapsed = start.elapsed();
        if n > 8 && n <= 10 {
            elapsed += prop42_time;
        }
        let in_time = elapsed <= Duration::from_secs(*limit);
        let status = if v.pass && in_time { "PASS" } else { "FAIL" };
        let time_note = if in_time { "" } else { " (over limit)" };
        println!(
            "criterion {:>2}  {}  tolerance=exact  {:.1}s/{}s{}  {}",
            n,
            status,
            elapsed.as_secs_f64(),
            limit,
            time_note,
            v.detail
        );
        if !in_time || (!v.pass && !v.expected_failure) {
            unexpected.push(n);
        }
        if v.expected_failure {
            println!("    documented finding: the published claim does not hold; the difference matches the record");
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria pass except the documented findings (3, 9)");
    } else {
        println!("acceptance: unexpected failures in criteria {:?}", unexpected);
        std::process::exit(1);
    }
}
