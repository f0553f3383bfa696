//! One verification suite per construction, as run by `cabelt verify`.

use crate::afo::{check_safety, retraction_discrepancy, Safety};
use crate::belt::{embed_automorphism, verify_embedding, BeltAlphabet};
use crate::code::Automorphism;
use crate::config::PeriodicConfig;
use crate::error::Result;
use crate::gallery;
use crate::khat;
use crate::neumann;
use crate::pointy::{lamplighter_action, lamplighter_level_check, lamplighter_oracle, free_orbit_check, weak_pointy_check};
use crate::report::{Record, Report};
use crate::verify::{show, VerifyParams, DEFAULT_SEED};
use crate::wreath;

pub const SUITES: [&str; 7] = ["core", "afo", "belt", "pointy", "wreath", "khat", "neumann"];

/// Knobs shared by all suites; `None` picks the suite's own default.
#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub period: Option<usize>,
    pub ball: Option<usize>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    /// Belt suite only: also embed a map whose stated inverse is wrong.
    pub corrupt: bool,
}

impl SuiteOptions {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report> {
    match name {
        "core" => core_suite(opts),
        "afo" => afo_suite(opts),
        "belt" => belt_suite(opts),
        "pointy" => pointy_suite(opts),
        "wreath" => wreath_suite(opts),
        "khat" => khat_suite(opts),
        "neumann" => neumann_suite(opts),
        other => Err(crate::error::Error::InvalidArgument(format!("unknown suite {other:?}"))),
    }
}

pub fn core_suite(opts: &SuiteOptions) -> Result<Report> {
    let params = VerifyParams { max_period: opts.period.unwrap_or(6), seed: opts.seed(), ..Default::default() };
    let mut report = Report::new();
    for f in gallery::belt_test_maps()? {
        report.extend(crate::verify::verify_automorphism(&f, &params));
    }
    let a = gallery::ternary();
    let s = Automorphism::shift(&a);
    let id_s = Automorphism::identity(&a).compose(&s)?;
    let mut same = true;
    for n in 1..=params.max_period {
        for x in PeriodicConfig::all(&a, n) {
            same &= id_s.forward.apply_periodic(&x)? == s.forward.apply_periodic(&x)?;
        }
    }
    report.push(Record::check("core", "compose_identity", same, || "id∘σ differs from σ".into()));
    Ok(report)
}

/// The five worked mappings, the safety examples, sparsity of every shipped
/// AFO and the retraction count of one mixed product.
pub fn afo_suite(opts: &SuiteOptions) -> Result<Report> {
    let suite = "afo";
    let a = gallery::ternary();
    let f = gallery::example_afo()?;
    let mut report = Report::new();
    let cases: [(&[u8], &[u8]); 5] = [
        (&[1], &[2]),
        (&[2, 0], &[0, 1]),
        (&[1, 2], &[1, 2]),
        (&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 2]),
        (&[0, 0, 1, 0, 0, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 0, 1, 0, 0]),
    ];
    for (x, y) in cases {
        let x: Vec<_> = x.iter().map(|&c| c as crate::Symbol).collect();
        let got = f.apply_cells(&x);
        let want: Vec<_> = y.iter().map(|&c| c as crate::Symbol).collect();
        report.push(Record::check(suite, format!("example.f({})", show(&a, &x)), got == want, || {
            format!("got={} expected={}", show(&a, &got), show(&a, &want))
        }));
    }
    let w101 = vec![vec![1, 0, 1]];
    match check_safety(&a, &w101, 4)? {
        Safety::Unsafe(c) => report.push(Record::pass(suite, "safety.101.n0=4.unsafe").with_witness(show(&a, &c.tape))),
        Safety::Safe => report.push(Record::fail(suite, "safety.101.n0=4.unsafe", "reported safe")),
    }
    report.push(Record::check(suite, "safety.101.n0=5.safe", check_safety(&a, &w101, 5)?.is_safe(), || "collision".into()));
    let singles = check_safety(&a, &[vec![1]], 1)?.is_safe() && check_safety(&a, &[vec![2]], 1)?.is_safe();
    report.push(Record::check(suite, "safety.single_letters.n0=1.safe", singles, || "collision".into()));
    let max_n = opts.period.unwrap_or(12);
    for (name, g) in gallery::shipped_afos()? {
        let bad = (1..=max_n).find(|&n| g.moved_count(n) > g.word_count() * n);
        report.push(
            Record::check(suite, format!("sparsity.{name}"), bad.is_none(), || {
                let n = bad.unwrap();
                format!("n={n} moved={} bound={}", g.moved_count(n), g.word_count() * n)
            })
            .with_detail(format!("n<={max_n}")),
        );
    }
    let rc = retraction_discrepancy(&a, &gallery::mixed_product()?, 6);
    report.push(
        Record::check(suite, "retraction.n6", rc.differing <= rc.bound, || {
            format!("differing={} bound={}", rc.differing, rc.bound)
        })
        .with_detail(format!("differing={} bound={} total={}", rc.differing, rc.bound, rc.total)),
    );
    Ok(report)
}

/// Embedding soundness for `id`, `σ` and the conditional swap over `{0,1,2}`.
pub fn belt_suite(opts: &SuiteOptions) -> Result<Report> {
    let params = VerifyParams {
        max_period: opts.period.unwrap_or(5),
        tape_budget: 20_000_000,
        random_count: 1000,
        random_max_period: 40,
        seed: opts.seed(),
        ..Default::default()
    };
    let mut report = Report::new();
    let mut maps = gallery::belt_test_maps()?;
    if opts.corrupt {
        let s = Automorphism::shift(&gallery::ternary());
        maps.push(Automorphism { name: "corrupt".into(), backward: s.forward.clone(), ..s });
    }
    for f in maps {
        report.extend(verify_embedding(&embed_automorphism(&f, false)?, &params));
    }
    Ok(report)
}

pub fn pointy_suite(opts: &SuiteOptions) -> Result<Report> {
    let ball = opts.ball.unwrap_or(8);
    let p = lamplighter_action(&[2])?;
    let oracle = lamplighter_oracle(&[2]);
    let mut report = free_orbit_check(&p, ball, &oracle)?;
    report.extend(weak_pointy_check(&p, ball.min(6), &(1..=8).collect::<Vec<_>>())?);
    report.push(lamplighter_level_check(2, opts.period.unwrap_or(8), 200, opts.seed())?);
    Ok(report)
}

/// Relation suite of the `Z ≀ (Z_2 ≀ Z)` table on `L, F, U`, and the sample tape.
pub fn wreath_suite(opts: &SuiteOptions) -> Result<Report> {
    let full = wreath::assemble_example_zz2z()?;
    let mut table = crate::action::GeneratorTable::new(full.alphabet());
    for name in ["L", "F", "U"] {
        table.insert(full.get(name)?.clone())?;
    }
    let spec = wreath::example_zz2z_spec()?;
    let b = BeltAlphabet::new(spec.alphabet())?;
    let depth = opts.ball.unwrap_or(3);
    let pres = wreath::zz2z_presentation(depth);
    let special = spec.special_point().word().to_vec();
    let designated = wreath::designated_tapes(&table, &b, &special, &["L", "F"], depth, 12)?;
    let params = wreath::SuiteParams { max_period: opts.period.unwrap_or(3), ..Default::default() };
    let mut report = wreath::relation_suite("wreath", &table, &pres, &params, &designated)?;
    report.extend(wreath::sample_behaviours(&full)?);
    Ok(report)
}

pub fn khat_suite(opts: &SuiteOptions) -> Result<Report> {
    let k = opts.k.unwrap_or(2);
    let period = opts.period.unwrap_or(8);
    let vp = VerifyParams { max_period: 6.min(period), random_count: 200, random_max_period: 40, seed: opts.seed(), ..Default::default() };
    let mut report = khat::verify_khat(k, &vp)?;
    let lens: Vec<usize> = (1..=period.saturating_sub(2).min(if k >= 3 { 4 } else { 6 })).collect();
    report.extend(khat::conjugacy_check(k, &lens)?);
    match k {
        2 => {
            report.extend(khat::zz_realization_check(opts.ball.unwrap_or(6), period, period.max(12))?);
            let ns: Vec<usize> = (2..=period).collect();
            report.push(khat::marked_ball_compare(2, &lens, &ns, opts.ball.unwrap_or(6))?);
        }
        3 => {
            let t = khat::torsion_witness(2, &(8..=12).collect::<Vec<_>>(), period.max(12))?;
            report.extend(t.report);
            report.push(khat::marked_ball_compare(3, &lens, &(1..=4).collect::<Vec<_>>(), opts.ball.unwrap_or(4))?);
        }
        _ => {}
    }
    for n in 2..=4 {
        report.push(khat::solvability_check(k, n, 200_000, 200, opts.seed())?);
    }
    Ok(report)
}

pub fn neumann_suite(opts: &SuiteOptions) -> Result<Report> {
    let period = opts.period.unwrap_or(8);
    let mut report = Report::new();
    for n in 2..=4 {
        report.push(neumann::certificate_pattern(n)?);
    }
    report.extend(neumann::even_orders_check(period)?);
    report.extend(neumann::neumann_compare(period, opts.ball.unwrap_or(6))?);
    report.extend(neumann::block_recovery(&[6, 8], 100_000)?);
    let vp = VerifyParams { max_period: 6, random_count: 200, random_max_period: 40, seed: opts.seed(), ..Default::default() };
    report.extend(neumann::verify_even(&vp)?);
    let prog = neumann::neumann_progression_generators(3, 2)?;
    report.push(neumann::cube_check(&prog, period.min(6), 20_000_000)?);
    Ok(report)
}
