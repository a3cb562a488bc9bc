use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num_traits::Zero;
use serde_json::json;

use ceptool_core::ce::{ce_violation, is_ce_projection, projections, Integrand};
use ceptool_core::counting::count_extreme_ce;
use ceptool_core::cycle::{enumerate_cycle_patterns, square_example, staircase_example};
use ceptool_core::ergodic::orbit::{rational_orbit_to_cycle, RationalRotation};
use ceptool_core::ergodic::{
    conditional_mean_residuals, equidistribution_check, pairwise_sum, quadrant_masses, sample,
    support_segments, RotationParams,
};
use ceptool_core::game::{example_game, FiniteGame};
use ceptool_core::io;
use ceptool_core::measure::{FiniteMeasure, MixedStrategy};
use ceptool_core::moments::{
    caratheodory_split, moments_of, non_describability_demo, verify_split, MomentBasis,
    SplitOutcome,
};
use ceptool_core::nash::{enumerate_extreme_nash, is_nash};
use ceptool_core::polytope::{
    ce_hrep, classify_vertices, enumerate_vertices, normalized_cycle_vertices,
};
use ceptool_core::rational::{format_rational, parse_rational, to_f64};
use ceptool_core::svg::{measure_svg, segments_svg};
use ceptool_core::validate::run_report;

use crate::{AlphaForm, GameSource, Method};

pub const DEFAULT_SEED: u64 = 20_240_917;

const RESIDUAL_TOLERANCE: f64 = 1e-6;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_game(source: &GameSource) -> Result<FiniteGame> {
    match (&source.n, &source.game) {
        (Some(n), _) => Ok(example_game(*n)?),
        (None, Some(path)) => {
            io::game_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
        }
        (None, None) => bail!("give --n or --game"),
    }
}

fn count_phrase(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn strategy_text(s: &MixedStrategy) -> String {
    let parts: Vec<String> = s
        .atoms()
        .iter()
        .map(|(v, w)| format!("{}:{}", format_rational(v), format_rational(w)))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn measure_text(mu: &FiniteMeasure) -> String {
    let parts: Vec<String> = mu
        .iter()
        .map(|(x, y, w)| {
            format!(
                "({}, {}):{}",
                format_rational(x),
                format_rational(y),
                format_rational(w)
            )
        })
        .collect();
    parts.join(" ")
}

pub fn nash(source: &GameSource, out: Option<&Path>) -> Result<bool> {
    let game = load_game(source)?;
    let pairs = enumerate_extreme_nash(&game);
    println!(
        "{}",
        count_phrase(
            pairs.len(),
            "extreme Nash equilibrium",
            "extreme Nash equilibria"
        )
    );
    let mut ok = true;
    for p in &pairs {
        ok &= is_nash(&game, &p.sigma, &p.tau)?;
        println!("{} x {}", strategy_text(&p.sigma), strategy_text(&p.tau));
    }
    if let Some(path) = out {
        let v: Vec<_> = pairs
            .iter()
            .map(|p| json!({"sigma": io::strategy_to_value(&p.sigma), "tau": io::strategy_to_value(&p.tau)}))
            .collect();
        write(path, &io::pretty(&json!(v)))?;
    }
    Ok(ok)
}

pub fn cycles(source: &GameSource, out: Option<&Path>, svg_dir: Option<&Path>) -> Result<bool> {
    let game = load_game(source)?;
    let patterns = enumerate_cycle_patterns(&game)?;
    println!(
        "{}",
        count_phrase(
            patterns.len(),
            "extreme correlated equilibrium",
            "extreme correlated equilibria"
        )
    );
    let mut by_k: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &patterns {
        *by_k.entry(2 * p.k()).or_default() += 1;
    }
    for (atoms, count) in &by_k {
        println!("  {atoms} atoms: {count}");
    }
    let mut ok = true;
    if let Some(n) = game.example_size() {
        let expected = count_extreme_ce(n as u64)?;
        ok = expected == patterns.len().into();
        println!(
            "closed-form count for n = {n}: {expected} ({})",
            if ok { "MATCH" } else { "MISMATCH" }
        );
    }
    let measures: Vec<FiniteMeasure> = patterns.iter().map(|p| p.measure()).collect();
    if let Some(path) = out {
        let v = json!({
            "game": io::game_to_value(&game),
            "measures": measures.iter().map(io::measure_to_value).collect::<Vec<_>>(),
        });
        write(path, &io::pretty(&v))?;
    }
    if let Some(dir) = svg_dir {
        for (i, mu) in measures.iter().enumerate() {
            let title = format!(
                "extreme correlated equilibrium {} of {}",
                i + 1,
                measures.len()
            );
            write(
                &dir.join(format!("cycle-{:04}.svg", i + 1)),
                &measure_svg(mu, &title),
            )?;
        }
    }
    Ok(ok)
}

pub fn vertices(source: &GameSource, compare: bool, dump: bool) -> Result<bool> {
    let game = load_game(source)?;
    let vs = enumerate_vertices(&ce_hrep(&game))?;
    let mut line = count_phrase(vs.len(), "vertex", "vertices");
    let mut ok = true;
    if compare {
        ok = vs.as_set() == normalized_cycle_vertices(&game)?;
        write!(line, "; sets {}", if ok { "EQUAL" } else { "DIFFER" })?;
    }
    println!("{line}");
    let c = classify_vertices(&game, &vs)?;
    println!(
        "{} products of extreme Nash pairs, {} other cycle measures, {} unexplained",
        c.product_nash.len(),
        c.cycle_non_product.len(),
        c.other.len()
    );
    if dump {
        for v in &vs.vertices {
            println!(
                "{}",
                measure_text(&FiniteMeasure::from_grid_vector(&game, v)?)
            );
        }
    }
    Ok(ok)
}

pub fn check(game: &Path, measure: &Path, method: Method) -> Result<bool> {
    let game = io::game_from_json(&read(game)?)?;
    let mu = io::measure_from_json(&read(measure)?)?;
    match method {
        Method::Def => match ce_violation(&game, &mu)? {
            None => {
                println!("PASS");
                Ok(true)
            }
            Some(v) => {
                println!("FAIL: {v}");
                Ok(false)
            }
        },
        Method::Proj => {
            if is_ce_projection(&game, &mu).context("use --method def for such measures")? {
                println!("PASS");
                return Ok(true);
            }
            let p = projections(&mu, Integrand::Xy);
            let witness =
                p.kx.atoms()
                    .iter()
                    .find(|(_, w)| !w.is_zero())
                    .map(|(x, w)| {
                        format!(
                            "kappa_x at x = {} is {}",
                            format_rational(x),
                            format_rational(w)
                        )
                    })
                    .or_else(|| {
                        p.ky.atoms()
                            .iter()
                            .find(|(_, w)| !w.is_zero())
                            .map(|(y, w)| {
                                format!(
                                    "kappa_y at y = {} is {}",
                                    format_rational(y),
                                    format_rational(w)
                                )
                            })
                    })
                    .unwrap_or_default();
            println!("FAIL: {witness}");
            Ok(false)
        }
    }
}

pub struct ErgodicArgs {
    pub a: String,
    pub b: String,
    pub alpha_num: String,
    pub alpha_form: AlphaForm,
    pub samples: Option<usize>,
    pub seed: u64,
    pub bins: usize,
    pub quad_points: usize,
    pub emit_svg: Option<PathBuf>,
}

pub fn ergodic(args: &ErgodicArgs) -> Result<bool> {
    let (a, b, c) = (
        parse_rational(&args.a).context("--a")?,
        parse_rational(&args.b).context("--b")?,
        parse_rational(&args.alpha_num).context("--alpha-num")?,
    );
    let (fa, fb, fc) = (to_f64(&a), to_f64(&b), to_f64(&c));
    let params = match args.alpha_form {
        AlphaForm::Sqrt5 => RotationParams::sqrt5(fa, fb, fc)?,
        AlphaForm::Rational => RotationParams::new(fa, fb, fc, false)?,
    };
    println!(
        "a = {fa}, b = {fb}, alpha = {:.15}, rotation number {:.15}{}",
        params.alpha,
        params.rotation_number(),
        if params.irrational {
            " (irrational)"
        } else {
            ""
        }
    );
    println!("support segments:");
    for s in support_segments(&params) {
        println!(
            "  quadrant {}: ({:.12}, {:.12}) to ({:.12}, {:.12})",
            s.quadrant, s.start.0, s.start.1, s.end.0, s.end.1
        );
    }
    let masses = quadrant_masses(&params);
    println!(
        "quadrant masses: {:.12} {:.12} {:.12} {:.12}",
        masses[0], masses[1], masses[2], masses[3]
    );
    let (rx, ry) = conditional_mean_residuals(&params, args.bins, args.quad_points)?;
    let mut ok = rx <= RESIDUAL_TOLERANCE && ry <= RESIDUAL_TOLERANCE;
    println!(
        "CE residuals ({} bins, {} points): lambda_x {rx:.3e}, lambda_y {ry:.3e} ({})",
        args.bins,
        args.quad_points,
        if ok { "PASS" } else { "FAIL" }
    );
    let d = equidistribution_check(&params, 100_000, 20)?;
    println!(
        "orbit of a over 100000 steps, 20 bins: total variation {:.3e}, largest bin deviation {:.3e}, {} empty bins",
        d.total_variation, d.max_bin, d.empty_bins
    );
    if let AlphaForm::Rational = args.alpha_form {
        let rot = RationalRotation::new(a.clone(), b, c)?;
        let p = rational_orbit_to_cycle(&rot, &a)?;
        let dim = p.witness_dimension();
        ok &= dim == 1;
        println!(
            "orbit of a has period {}: cycle with k = {}, {} atoms, witness dimension {dim}",
            rot.period(),
            p.k(),
            2 * p.k()
        );
    }
    if let Some(n) = args.samples.filter(|&n| n > 0) {
        let pts = sample(&params, n, args.seed);
        let mut counts = [0usize; 4];
        for (x, y) in &pts {
            counts[match (*x > 0.0, *y > 0.0) {
                (true, true) => 0,
                (false, true) => 1,
                (false, false) => 2,
                (true, false) => 3,
            }] += 1;
        }
        let right: Vec<f64> = pts.iter().filter(|p| p.0 > 0.0).map(|p| p.1).collect();
        let mean = pairwise_sum(&right) / right.len().max(1) as f64;
        println!(
            "{n} samples (seed {}): quadrant frequencies {:.4} {:.4} {:.4} {:.4}, E[y | x > 0] = {mean:.3e}",
            args.seed,
            counts[0] as f64 / n as f64,
            counts[1] as f64 / n as f64,
            counts[2] as f64 / n as f64,
            counts[3] as f64 / n as f64,
        );
    }
    if let Some(path) = &args.emit_svg {
        write(
            path,
            &segments_svg(&support_segments(&params), "rotation equilibrium support"),
        )?;
    }
    Ok(ok)
}

pub fn moments(
    measure: Option<&Path>,
    basis: &str,
    demo: Option<usize>,
    out: Option<&Path>,
) -> Result<bool> {
    if let Some(d) = demo {
        let rep = non_describability_demo(d)?;
        print!("{rep}");
        if let (Some(path), SplitOutcome::Split { mu1, mu2 }) = (out, &rep.outcome) {
            write_halves(path, mu1, mu2)?;
        }
        return Ok(rep.succeeded());
    }
    let path = measure.context("give --measure or --demo")?;
    let mu = io::measure_from_json(&read(path)?)?;
    let basis = MomentBasis::parse(basis)?;
    println!("basis: {basis}");
    println!("moments: {}", moments_of(&mu, &basis));
    match caratheodory_split(&mu, &basis) {
        SplitOutcome::ExtremeForBasis => {
            println!("extreme for this basis: no moment-preserving split");
            Ok(true)
        }
        SplitOutcome::Split { mu1, mu2 } => {
            let ok = verify_split(&mu, &basis, &mu1, &mu2);
            println!("mu1: {}", measure_text(&mu1));
            println!("mu2: {}", measure_text(&mu2));
            println!(
                "mu = (mu1 + mu2)/2 with equal moments: {}",
                if ok { "PASS" } else { "FAIL" }
            );
            if let Some(path) = out {
                write_halves(path, &mu1, &mu2)?;
            }
            Ok(ok)
        }
    }
}

fn write_halves(path: &Path, mu1: &FiniteMeasure, mu2: &FiniteMeasure) -> Result<()> {
    write(
        path,
        &io::pretty(&json!({"mu1": io::measure_to_value(mu1), "mu2": io::measure_to_value(mu2)})),
    )
}

pub fn report(out: Option<&Path>, big: bool) -> Result<bool> {
    let r = run_report(big);
    let table = r.to_string();
    print!("{table}");
    if let Some(dir) = out {
        write(&dir.join("summary.txt"), &table)?;
        write(
            &dir.join("figure1.svg"),
            &measure_svg(
                &square_example().measure(),
                "four-atom extreme correlated equilibrium",
            ),
        )?;
        write(
            &dir.join("figure2.svg"),
            &measure_svg(
                &staircase_example().measure(),
                "eight-atom extreme correlated equilibrium",
            ),
        )?;
        write(
            &dir.join("figure3.svg"),
            &segments_svg(
                &support_segments(&RotationParams::standard()),
                "rotation equilibrium support",
            ),
        )?;
    }
    Ok(r.all_passed())
}
