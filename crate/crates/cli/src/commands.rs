//! Subcommands. Each builds a [`Report`]; mathematical failures are counted in
//! the report, errors become exit codes.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use artinforge::asai;
use artinforge::chr::{self, character_table, CharacterTable, ClassFunction};
use artinforge::grp::Group;
use artinforge::lfn::{self, GaloisArithData};
use artinforge::nt::{self, search, QuadField, QuadInt};
use artinforge::ogo::{self, CoverKind};
use artinforge::{corpus, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::golden;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "artinforge", version, about = "Exact checks for Asai characters, GO(4) structure and Artin Euler factors")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel sweeps (0 = all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Character table of a named group.
    Table {
        #[arg(long)]
        group: String,
    },
    /// Asai restriction, induction, exterior-square and local laws over every index-2 setup.
    Asai {
        #[arg(long)]
        group: String,
    },
    /// Dihedral cuspidality criterion against irreducibility of the Asai character.
    Cuspidal {
        #[arg(long)]
        group: String,
    },
    /// GO(4) trichotomy for an irreducible degree-4 character, or for the Asai character of GO4(H).
    Classify {
        #[arg(long)]
        group: String,
        /// Index into the character table; defaults to the Asai character when the group is GO4(H).
        #[arg(long)]
        character: Option<usize>,
    },
    /// Monomial witnesses for odd-degree orthogonal irreducibles.
    Monomialize {
        #[arg(long)]
        group: String,
        #[arg(long)]
        character: Option<usize>,
    },
    /// Exterior- and symmetric-square identities on random degree-2 pairs from the corpus.
    Identities {
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = nt::DEFAULT_SEED)]
        seed: u64,
    },
    /// Search for a quartic over Q(sqrt d) satisfying the five residue/discriminant conditions.
    QuarticSearch {
        #[arg(long, default_value_t = -1)]
        field: i64,
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 7, 11])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = nt::DEFAULT_SEED)]
        seed: u64,
        /// Degree-1 primes used for Frobenius sampling (0 skips sampling).
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Galois group of an integer cubic or quartic, with optional Frobenius sampling.
    GaloisId {
        /// Coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Local Dedekind identity zeta_N = zeta_F L(a_N/F) at every unramified prime.
    DedekindCheck {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
        /// Print every prime's line, not only failures.
        #[arg(long)]
        lines: bool,
    },
    /// One of the double covers of S4.
    Cover {
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// The GO(4)-extension of H with its degree-4 Asai character.
    Go4 {
        #[arg(long)]
        group: String,
    },
    /// Golden files for the group/table corpus.
    Corpus {
        #[arg(value_enum)]
        action: CorpusAction,
        /// Golden directory; defaults to $ARTINFORGE_CORPUS, then ./corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Tilde,
    Hat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CorpusAction {
    Regenerate,
    Verify,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_) | Error::Input(_) | Error::Precondition(_) | Error::GroupMismatch | Error::NotACharacter(_) => 2,
            Error::ResourceCap(_) | Error::SearchExhausted(_) => 3,
            Error::DivisionByZero | Error::CheckFailed(_) | Error::Internal(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Out = std::result::Result<Report, Failure>;

pub fn run(cli: &Cli) -> Out {
    let start = Instant::now();
    let mut report = match &cli.cmd {
        Cmd::Table { group } => table(group),
        Cmd::Asai { group } => asai_cmd(group),
        Cmd::Cuspidal { group } => cuspidal(group),
        Cmd::Classify { group, character } => classify(group, *character),
        Cmd::Monomialize { group, character } => monomialize(group, *character),
        Cmd::Identities { pairs, seed } => identities(*pairs, *seed),
        Cmd::QuarticSearch { field, primes, budget, seed, samples } => quartic_search(*field, primes, *budget, *seed, *samples),
        Cmd::GaloisId { poly, samples } => galois_id(poly, *samples),
        Cmd::DedekindCheck { poly, bound, lines } => dedekind_check(poly, *bound, *lines),
        Cmd::Cover { kind } => cover(*kind),
        Cmd::Go4 { group } => go4(group),
        Cmd::Corpus { action, dir } => corpus_cmd(*action, dir.clone()),
    }?;
    if cli.timings {
        report.timings.push(("total".into(), start.elapsed().as_secs_f64()));
    }
    Ok(report)
}

fn group(name: &str) -> Result<Group, Failure> {
    corpus::group(name).map_err(Failure::from)
}

fn table_of(g: &Group) -> Result<Arc<CharacterTable>, Failure> {
    Ok(Arc::new(character_table(g)?))
}

fn table(name: &str) -> Out {
    let g = group(name)?;
    let t = character_table(&g)?;
    let mut r = Report::new("table");
    r.input("group", name);
    let lines = t.render().lines().map(String::from).collect();
    r.section("table", lines, serde_json::to_value(t.to_json()).unwrap_or_default());
    let (rows, cols) = chr::orthogonality(&t)?;
    r.check(rows);
    r.check(cols);
    r.section("orthogonality", vec![format!("rows={rows} columns={cols}")], json!({"rows": rows, "columns": cols}));
    Ok(r)
}

fn asai_cmd(name: &str) -> Out {
    let g = group(name)?;
    let mut r = Report::new("asai");
    r.input("group", name);
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for (i, s) in asai::setups_of(&g)?.iter().enumerate() {
        let mut res = asai::asai_laws(s)?;
        res.push(asai::IdentityResult { name: "split-place".into(), pass: asai::split_place_check(s)? });
        res.push(asai::IdentityResult { name: "euler-factors".into(), pass: lfn::asai_euler_check(s)? });
        let inert = asai::inert_place_rule(s)?;
        let irr = asai::asai_is_irreducible(s)?;
        let names: Vec<String> = res.iter().map(|x| format!("{}={}", x.name, x.pass)).collect();
        for x in &res {
            r.check(x.pass);
        }
        lines.push(format!(
            "setup {i} H={} sigma=[{}] irreducible_as={irr} {} inert(as={},as*delta={})",
            s.h.group.order(),
            s.sigma.to_strings().join(" | "),
            names.join(" "),
            inert.asai,
            inert.asai_delta
        ));
        rows.push(json!({"setup": i, "asai_irreducible": irr, "laws": res.iter().map(|x| json!({"name": x.name, "pass": x.pass})).collect::<Vec<_>>(), "inert": inert}));
    }
    r.section("setups", lines, json!(rows));
    Ok(r)
}

fn cuspidal(name: &str) -> Out {
    let g = group(name)?;
    let mut r = Report::new("cuspidal");
    r.input("group", name);
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for (i, s) in asai::setups_of(&g)?.iter().enumerate() {
        for (j, d) in asai::dihedral_setups(s)?.iter().enumerate() {
            let v = asai::cuspidality_dihedral(d)?;
            r.check(v.agrees);
            lines.push(format!(
                "setup {i}.{j} |M|={} cuspidal={} asai_irreducible={} agrees={} ({})",
                d.m.group.order(),
                v.cuspidal,
                v.asai_irreducible,
                v.agrees,
                v.explanation
            ));
            rows.push(json!({"setup": i, "dihedral": j, "verdict": v}));
        }
    }
    r.section("dihedral setups", lines, json!(rows));
    Ok(r)
}

fn classify(name: &str, character: Option<usize>) -> Out {
    let mut r = Report::new("classify");
    r.input("group", name);
    let inner = name.strip_prefix("GO4(").and_then(|s| s.strip_suffix(')'));
    let c = match (inner, character) {
        (Some(h), None) => {
            r.input("character", "asai4");
            let ext = corpus::go4_of(h)?;
            let t = table_of(&ext.group)?;
            let (big, proj) = ext.cover()?;
            let bt = table_of(&big.group)?;
            asai::classify_go4_with_cover(&t, &ext.asai4, Some((&bt, &proj)))?
        }
        (_, Some(i)) => {
            r.input("character", i);
            let g = group(name)?;
            let t = table_of(&g)?;
            let rho = t
                .irreducibles()
                .get(i)
                .cloned()
                .ok_or_else(|| Failure { code: 2, message: format!("no character {i}") })?;
            asai::classify_go4(&t, &rho, None)?
        }
        (None, None) => return Err(Failure { code: 2, message: "--character is required unless the group is GO4(H)".into() }),
    };
    let tags = c.tags();
    r.check(!c.cases.is_empty());
    r.section(
        "classification",
        vec![
            format!("group order {} on_cover={}", c.group_order, c.on_cover),
            format!("similitude character nontrivial={}", c.similitude_nontrivial),
            format!("cases {}", tags.join(",")),
        ],
        serde_json::to_value(&c).unwrap_or_default(),
    );
    Ok(r)
}

fn monomialize(name: &str, character: Option<usize>) -> Out {
    let g = group(name)?;
    let t = character_table(&g)?;
    let mut r = Report::new("monomialize");
    r.input("group", name);
    let targets: Vec<usize> = match character {
        Some(i) => vec![i],
        None => (0..t.len())
            .filter(|&i| {
                let c = t.irreducible(i);
                c.degree().is_some_and(|d| d > 1 && d % 2 == 1) && chr::is_faithful(c)
            })
            .collect(),
    };
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for i in targets {
        let chi = t.irreducible(i).clone();
        let w = ogo::monomialize_odd(&g, &chi)?;
        let ok = chr::induce(&w.embedding, &w.lambda)? == chi;
        let square_trivial = w.lambda.tensor(&w.lambda)? == ClassFunction::trivial(&w.embedding.group);
        r.check(ok);
        if chi.is_self_dual() {
            r.check(square_trivial);
        }
        lines.push(format!(
            "chi{i} degree {} = Ind from order {} (chain {:?}, fallback={}) lambda^2 trivial={square_trivial}",
            chi.degree().unwrap_or(0),
            w.subgroup.order(),
            w.chain,
            w.via_fallback
        ));
        rows.push(json!({"character": i, "subgroup_order": w.subgroup.order(), "chain": w.chain, "fallback": w.via_fallback, "lambda": w.lambda.to_strings(), "verified": ok}));
    }
    r.section("witnesses", lines, json!(rows));
    Ok(r)
}

fn identities(pairs: usize, seed: u64) -> Out {
    let groups = corpus::all()?;
    let mut r = Report::new("identities");
    r.seed("pairs", seed);
    r.input("pairs", pairs);
    let st = asai::identity_suite(&groups, pairs, seed)?;
    r.check(st.failures.is_empty());
    let mut lines = vec![format!("pairs {} failures {}", st.cases, st.failures.len())];
    lines.extend(st.failures.iter().cloned());
    r.section("pair identities", lines, serde_json::to_value(&st).unwrap_or_default());
    Ok(r)
}

fn quartic_search(d: i64, primes: &[u64], budget: u64, seed: u64, samples: usize) -> Out {
    let e = QuadField::new(d)?;
    let p: [u64; 3] = primes
        .try_into()
        .map_err(|_| Failure { code: 2, message: "exactly three primes are needed".into() })?;
    let mut r = Report::new("quartic-search");
    r.seed("search", seed);
    r.seed("factorization", nt::DEFAULT_SEED);
    r.input("field", format!("Q(sqrt {d})"));
    r.input("primes", format!("{},{},{}", p[0], p[1], p[2]));
    r.input("budget", budget);
    let cfg = search::SearchConfig { budget, seed, ..Default::default() };
    let (c, stats) = search::search_quartic(&e, p, None, &cfg)?;
    let verified = search::verify_candidate(&e, &c)?;
    for v in verified {
        r.check(v);
    }
    let mut lines = vec![format!("f = [{}]", c.coeffs.join(", ")), format!("D(f) = {}", c.discriminant)];
    for ev in &c.evidence {
        lines.push(format!("({}) {} {}", ev.condition, ev.holds, ev.detail));
    }
    lines.push(format!("re-verified {verified:?}"));
    lines.push(format!(
        "attempts {} repairs {} modulus {} repair height {}",
        stats.attempts, stats.repairs, stats.modulus, stats.repair_height
    ));
    r.section("candidate", lines, json!({"candidate": c, "stats": stats, "verified": verified}));
    if samples > 0 {
        let s = search::frobenius_sampling(&c.poly, Some(&e), samples)?;
        r.check(s.s4_consistent);
        r.section("frobenius sampling", sampling_lines(&s), serde_json::to_value(&s).unwrap_or_default());
    }
    Ok(r)
}

fn sampling_lines(s: &search::SamplingReport) -> Vec<String> {
    let mut lines = vec![format!("samples {} largest prime {}", s.samples, s.largest_prime)];
    for (t, obs, exp, dev) in &s.comparison {
        lines.push(format!("type={t} observed={obs:.4} expected={exp:.4} deviation={dev:.3}"));
    }
    if let Some(a) = s.theta_parity_agreement {
        lines.push(format!("parity agreement of f and f^theta {a:.3}"));
    }
    lines.push(format!("S4-consistent (tolerance {}) {}", s.tolerance, s.s4_consistent));
    lines
}

fn galois_id(poly: &str, samples: usize) -> Out {
    let f = nt::parse_int_poly(poly)?;
    let mut r = Report::new("galois-id");
    r.input("poly", nt::poly::format_poly(&f));
    let disc = nt::discriminant(&f);
    let mut lines = vec![format!("discriminant {disc}")];
    let group = match f.len() - 1 {
        3 => {
            if nt::poly::cubic_galois_is_symmetric(&f)? {
                "S3".to_string()
            } else {
                "A3".to_string()
            }
        }
        4 => {
            let res = nt::resolvent_cubic(&f)?;
            lines.push(format!("resolvent cubic [{}]", nt::poly::format_poly(&res)));
            nt::quartic_galois_over_q(&f)?.to_string()
        }
        n => return Err(Failure { code: 2, message: format!("degree {n} is not supported") }),
    };
    lines.push(format!("group {group}"));
    r.section("galois group", lines, json!({"discriminant": disc.to_string(), "group": group}));
    if samples > 0 {
        let q: Vec<QuadInt> = f.iter().map(|c| QuadField::new(-1).expect("valid").from_int(c.clone())).collect();
        let s = search::frobenius_sampling(&q, None, samples)?;
        if group == "S4" {
            r.check(s.s4_consistent);
        }
        r.section("frobenius sampling", sampling_lines(&s), serde_json::to_value(&s).unwrap_or_default());
    }
    Ok(r)
}

fn dedekind_check(poly: &str, bound: u64, all_lines: bool) -> Out {
    let f = nt::parse_int_poly(poly)?;
    let data = GaloisArithData::symmetric(&f)?;
    let mut r = Report::new("dedekind-check");
    r.input("poly", nt::poly::format_poly(&f));
    r.input("bound", bound);
    let rep = lfn::verify_dedekind(&data, bound)?;
    r.check(rep.passed());
    let mut lines = vec![format!(
        "checked {} failed {} skipped {:?}",
        rep.checked, rep.failed, rep.skipped
    )];
    for l in rep.lines.iter().filter(|l| all_lines || !l.ok) {
        lines.push(format!("p={} zetaN={} rhs={} ok={}", l.p, l.zeta_n, l.rhs, l.ok));
    }
    let data_json = json!({"checked": rep.checked, "failed": rep.failed, "skipped": rep.skipped, "first_failure": rep.first_failure});
    r.section("local identities", lines, data_json);
    Ok(r)
}

fn cover(kind: Kind) -> Out {
    let k = match kind {
        Kind::Tilde => CoverKind::Tilde,
        Kind::Hat => CoverKind::Hat,
    };
    let c = ogo::double_cover_s4(k)?;
    let mut r = Report::new("cover");
    r.input("kind", format!("{kind:?}").to_lowercase());
    let t = character_table(&c.group)?;
    let (rows, cols) = chr::orthogonality(&t)?;
    r.check(c.group.order() == 48);
    r.check(c.center.order() == 2);
    r.check(rows && cols);
    let lift_ok = c.transposition_lift_order == if matches!(k, CoverKind::Tilde) { 2 } else { 4 };
    r.check(lift_ok);
    r.section(
        "cover",
        vec![
            format!("group {} order {} centre {}", c.group.label(), c.group.order(), c.center.order()),
            format!("transposition lifts have order {}", c.transposition_lift_order),
            format!("degrees {:?}", t.degrees()),
            format!("faithful degree-2 tau [{}]", c.tau.to_strings().join(" | ")),
        ],
        json!({"order": c.group.order(), "lift_order": c.transposition_lift_order, "degrees": t.degrees()}),
    );
    Ok(r)
}

fn go4(name: &str) -> Out {
    let mut r = Report::new("go4");
    r.input("group", name);
    let ext = corpus::go4_of(name)?;
    let irr = chr::is_irreducible(&ext.asai4)?;
    let go = ogo::is_go_type(&ext.asai4)?;
    r.check(irr);
    r.check(go.is_some());
    let h = &ext.h;
    let expected = 2 * h.order() * h.order() / ext.c.order();
    r.check(ext.group.order() == expected);
    let witness = go.as_ref().map(|(i, l)| format!("linear {i}: [{}]", l.to_strings().join(" | ")));
    r.section(
        "extension",
        vec![
            format!("H {} order {} C order {}", h.label(), h.order(), ext.c.order()),
            format!("group order {} (expected {expected})", ext.group.order()),
            format!("asai4 irreducible={irr}"),
            format!("GO-type witness {}", witness.clone().unwrap_or_else(|| "none".into())),
        ],
        json!({"order": ext.group.order(), "asai4_irreducible": irr, "witness": witness}),
    );
    Ok(r)
}

fn corpus_cmd(action: CorpusAction, dir: Option<PathBuf>) -> Out {
    let dir = dir
        .or_else(|| std::env::var_os("ARTINFORGE_CORPUS").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("corpus"));
    let mut r = Report::new("corpus");
    r.input("dir", dir.display());
    match action {
        CorpusAction::Regenerate => {
            r.input("action", "regenerate");
            let files = golden::regenerate(&dir)?;
            r.check(true);
            r.section("written", files, json!(null));
        }
        CorpusAction::Verify => {
            r.input("action", "verify");
            let diffs = golden::verify(&dir)?;
            r.check(diffs.is_empty());
            let lines = if diffs.is_empty() { vec!["all golden files match".into()] } else { diffs.clone() };
            r.section("diff", lines, json!(diffs));
        }
    }
    Ok(r)
}
