//! Acceptance criteria AC1..AC10, one status line each.
//!
//! Lines are written straight to stdout so they appear without `--nocapture`.
//! AC3 and AC10 are reported but not gated: AC3 has a known family of
//! counterexamples (checked below to be exactly that family), AC10 is soft.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use artinforge::asai::{self, Go4Case};
use artinforge::chr::{self, character_table, induce, ClassFunction};
use artinforge::lfn::{self, GaloisArithData, POLE_GRID, POLE_TOLERANCE};
use artinforge::nt::{self, search, QuadField};
use artinforge::{corpus, ogo};

struct Line {
    id: &'static str,
    pass: bool,
    gated: bool,
    detail: String,
    elapsed: Duration,
}

fn emit(l: &Line) {
    let status = match (l.pass, l.gated) {
        (true, _) => "PASS",
        (false, true) => "FAIL",
        (false, false) => "FAIL (reported, not gated)",
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{} {status} [{:.2}s] {}", l.id, l.elapsed.as_secs_f64(), l.detail);
    let _ = out.flush();
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn ac1() -> Line {
    let expect: [(&str, &[i64]); 8] = [
        ("S3", &[1, 1, 2]),
        ("S4", &[1, 1, 2, 3, 3]),
        ("A4", &[1, 1, 1, 3]),
        ("Q8", &[1, 1, 1, 1, 2]),
        ("SL(2,3)", &[1, 1, 1, 2, 2, 2, 3]),
        ("GL(2,3)", &[1, 1, 2, 2, 2, 3, 3, 4]),
        ("S4tilde", &[1, 1, 2, 2, 2, 3, 3, 4]),
        ("S4hat", &[1, 1, 2, 2, 2, 3, 3, 4]),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    let (_, elapsed) = timed(|| {
        for (name, degrees) in expect {
            let ((ok, d), t) = timed(|| {
                let g = corpus::group(name).unwrap();
                let tab = character_table(&g).unwrap();
                let (rows, cols) = chr::orthogonality(&tab).unwrap();
                let mut d = tab.degrees();
                d.sort_unstable();
                (rows && cols && d == degrees, d)
            });
            let ok = ok && t < Duration::from_secs(10);
            pass &= ok;
            if !ok {
                notes.push(format!("{name}: degrees {d:?} in {:.2}s", t.as_secs_f64()));
            }
        }
    });
    let detail = if notes.is_empty() { "8 tables, orthogonality and degree multisets exact".into() } else { notes.join("; ") };
    Line { id: "AC1", pass, gated: true, detail, elapsed }
}

fn ac2(groups: &[artinforge::grp::Group]) -> Line {
    let (st, elapsed) = timed(|| asai::law_sweep(groups));
    Line {
        id: "AC2",
        pass: st.failures.is_empty() && st.cases > 0 && elapsed < Duration::from_secs(300),
        gated: true,
        detail: format!("{} groups, {} setups, {} law failures", st.groups, st.cases, st.failures.len()),
        elapsed,
    }
}

fn ac3(groups: &[artinforge::grp::Group]) -> Line {
    let (st, elapsed) = timed(|| asai::cuspidality_sweep(groups));
    // every disagreement must be the analysed one: M normal with cyclic quotient, inside Z/2wrZ/4
    let unexplained: Vec<&String> =
        st.failures.iter().filter(|f| !(f.contains("(G/M cyclic)") && f.contains("Z/2wrZ/4"))).collect();
    assert!(unexplained.is_empty(), "unexplained cuspidality mismatches: {unexplained:?}");
    Line {
        id: "AC3",
        pass: st.failures.is_empty() && elapsed < Duration::from_secs(300),
        gated: false,
        detail: format!(
            "{} dihedral setups, {} cuspidal, {} mismatches (all with M normal and G/M cyclic)",
            st.cases,
            st.positives,
            st.failures.len()
        ),
        elapsed,
    }
}

fn ac4(groups: &[artinforge::grp::Group]) -> Line {
    let (st, elapsed) = timed(|| asai::local_formula_sweep(groups));
    Line {
        id: "AC4",
        pass: st.failures.is_empty() && st.positives > 0 && elapsed < Duration::from_secs(60),
        gated: true,
        detail: format!(
            "{} split-place checks, {} principal-series checks, {} failures",
            st.cases,
            st.positives,
            st.failures.len()
        ),
        elapsed,
    }
}

fn ac5(groups: &[artinforge::grp::Group]) -> Line {
    let (st, elapsed) = timed(|| asai::identity_suite(groups, 1000, nt::DEFAULT_SEED).unwrap());
    Line {
        id: "AC5",
        pass: st.failures.is_empty() && st.cases == 1000 && elapsed < Duration::from_secs(60),
        gated: true,
        detail: format!("{} random degree-2 pairs, {} failures", st.cases, st.failures.len()),
        elapsed,
    }
}

fn ac6() -> Line {
    let mut parts = Vec::new();
    let mut pass = true;
    let (_, elapsed) = timed(|| {
        for f in [&[-1i64, -1, 0, 1][..], &[-1, -1, 0, 0, 1]] {
            let poly = nt::int_poly(f);
            let (rep, t) = timed(|| lfn::verify_dedekind(&GaloisArithData::symmetric(&poly).unwrap(), 10_000).unwrap());
            pass &= rep.passed() && t < Duration::from_secs(30);
            parts.push(format!("[{}]: {}/{} primes", nt::poly::format_poly(&poly), rep.checked - rep.failed, rep.checked));
        }
        let s4 = corpus::group("S4").unwrap();
        let chains = lfn::transitivity_sweep(&s4).unwrap();
        pass &= chains.failures.is_empty() && chains.chains > 0;
        parts.push(format!("transitivity on {} chains of S4, {} failures", chains.chains, chains.failures.len()));
    });
    Line { id: "AC6", pass, gated: true, detail: parts.join("; "), elapsed }
}

fn ac7() -> Line {
    let mut detail = String::new();
    let (pass, elapsed) = timed(|| {
        let e = QuadField::new(-1).unwrap();
        let cfg = search::SearchConfig { budget: 1_000_000, ..Default::default() };
        let (c, stats) = search::search_quartic(&e, [3, 7, 11], None, &cfg).unwrap();
        let verified = search::verify_candidate(&e, &c).unwrap();
        let s = search::frobenius_sampling(&c.poly, Some(&e), 500).unwrap();
        let worst = s.comparison.iter().map(|x| x.3).fold(0.0f64, f64::max);
        detail = format!(
            "f = [{}] after {} attempts, re-verified {:?}, 500 primes S4-consistent={} (max deviation {worst:.3})",
            c.coeffs.join(", "),
            stats.attempts,
            verified,
            s.s4_consistent
        );
        verified.iter().all(|&v| v) && stats.attempts <= 1_000_000 && s.s4_consistent
    });
    Line { id: "AC7", pass: pass && elapsed < Duration::from_secs(300), gated: true, detail, elapsed }
}

fn ac8() -> Line {
    let mut parts = Vec::new();
    let (pass, elapsed) = timed(|| {
        let mut pass = true;
        // 2-Sylow of S4 has order 8; for A4 it is the Klein group
        for (name, sylow) in [("S4", 8usize), ("A4", 4)] {
            let g = corpus::group(name).unwrap();
            let t = character_table(&g).unwrap();
            for (_, chi) in t.of_degree(3) {
                let w = ogo::monomialize_odd(&g, chi).unwrap();
                let exact = &induce(&w.embedding, &w.lambda).unwrap() == chi;
                let sq = w.lambda.tensor(&w.lambda).unwrap() == ClassFunction::trivial(&w.embedding.group);
                let ok = exact && w.subgroup.order() == sylow && (!chi.is_self_dual() || sq);
                pass &= ok;
                parts.push(format!("{name}: Ind from order {} exact={exact} lambda^2=1 {sq}", w.subgroup.order()));
            }
        }
        pass
    });
    Line { id: "AC8", pass: pass && elapsed < Duration::from_secs(10), gated: true, detail: parts.join("; "), elapsed }
}

fn ac9() -> Line {
    let mut detail = String::new();
    let (pass, elapsed) = timed(|| {
        let ext = corpus::go4_of("S4tilde").unwrap();
        let irr = chr::is_irreducible(&ext.asai4).unwrap();
        let witness = ogo::is_go_type(&ext.asai4).unwrap().is_some();
        let t = Arc::new(character_table(&ext.group).unwrap());
        let (big, proj) = ext.cover().unwrap();
        let bt = Arc::new(character_table(&big.group).unwrap());
        let c = asai::classify_go4_with_cover(&t, &ext.asai4, Some((&bt, &proj))).unwrap();
        let twist = c.cases.iter().any(|x| matches!(x, Go4Case::AsaiTwist { .. }));
        detail = format!(
            "order {}, As irreducible={irr}, GO-type witness={witness}, cases {:?} (via cover of order {})",
            ext.group.order(),
            c.tags(),
            big.group.order()
        );
        ext.group.order() == 2304 && irr && witness && twist
    });
    Line { id: "AC9", pass: pass && elapsed < Duration::from_secs(600), gated: true, detail, elapsed }
}

fn ac10() -> Line {
    let mut parts = Vec::new();
    let (pass, elapsed) = timed(|| {
        let mut pass = true;
        for f in [&[-1i64, -1, 0, 1][..], &[-1, -1, 0, 0, 1]] {
            let data = GaloisArithData::symmetric(&nt::int_poly(f)).unwrap();
            let one = ClassFunction::trivial(&data.group);
            let a = lfn::a_nf_character(&data.point_stabilizer).unwrap();
            let sum = a.add(&one).unwrap();
            for (label, chi) in [("1", &one), ("a", &a), ("a+1", &sum)] {
                let r = lfn::pole_order_probe(label, chi, &data, &POLE_GRID, 10_000).unwrap();
                pass &= r.within;
                parts.push(format!("deg {} {label}: slope {:.3} vs {}", f.len() - 1, r.slope, r.multiplicity));
            }
        }
        pass
    });
    Line { id: "AC10", pass, gated: false, detail: format!("tolerance {POLE_TOLERANCE}: {}", parts.join(", ")), elapsed }
}

#[test]
fn acceptance() {
    let groups = corpus::all().unwrap();
    let runs: [&dyn Fn() -> Line; 10] = [
        &ac1,
        &|| ac2(&groups),
        &|| ac3(&groups),
        &|| ac4(&groups),
        &|| ac5(&groups),
        &ac6,
        &ac7,
        &ac8,
        &ac9,
        &ac10,
    ];
    let mut gated_failures = Vec::new();
    for run in runs {
        let line = run();
        emit(&line);
        if line.gated && !line.pass {
            gated_failures.push(line.id);
        }
    }
    assert!(gated_failures.is_empty(), "failed: {gated_failures:?}");
}
