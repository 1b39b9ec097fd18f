//! Report suites behind `monoval report`. Every suite draws its corpus from a
//! seeded `ChaCha8Rng`, evaluates cases in parallel and assembles rows in
//! corpus order, so a `(suite, seed, samples)` triple fixes the output bytes.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use monoval::complex::{DualComplex, WeightPoint};
use monoval::corpus::{random_index, random_interior_bary, random_poly_degree, random_poly_m0, random_rat, random_u32, rng, CorpusRng};
use monoval::multiplicities::{
    alpha_exact, ideal_value, lipschitz_experiment_d, lipschitz_experiment_e, t106_gap, t107_scan, volume, MonomialIdeal,
    PairSample, QuadSample,
};
use monoval::scalar::{fmt_rat, fmt_rat_list};
use monoval::subdivision::{face_of, simplex_point, verify_l101, L101Status};
use monoval::surface::{
    at_infinity, at_infinity_apriori_b, chain_models, izumi_check, toric_model_fine, toric_model_small, BlowupTree,
    ToricAtInfinity,
};
use monoval::valuation::{check_theorem_a, ChartModel};
use monoval::{int, rat, Norm, Polynomial, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ThmA,
    ThmAPrime,
    Izumi,
    L101,
    CorC,
    CorD,
    CorE,
    T106,
    Teissier,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::ThmA,
        Suite::ThmAPrime,
        Suite::Izumi,
        Suite::L101,
        Suite::CorC,
        Suite::CorD,
        Suite::CorE,
        Suite::T106,
        Suite::Teissier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmA => "thmA",
            Suite::ThmAPrime => "thmAprime",
            Suite::Izumi => "izumi",
            Suite::L101 => "L101",
            Suite::CorC => "corC",
            Suite::CorD => "corD",
            Suite::CorE => "corE",
            Suite::T106 => "t106",
            Suite::Teissier => "teissier",
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::ThmA | Suite::ThmAPrime | Suite::CorC => 200,
            Suite::Izumi | Suite::Teissier => 100,
            Suite::L101 | Suite::CorD | Suite::CorE => 50,
            Suite::T106 => 500,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| anyhow!("unknown suite {s:?}; expected one of {}", names()))
    }
}

fn names() -> String {
    Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: Option<usize>,
    /// Norm on exponents; weights get the dual norm.
    pub norm: Norm,
    pub eps: Option<Rat>,
    /// Blowup tree JSON replacing the default chain models.
    pub model: Option<(String, String)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, samples: None, norm: Norm::L1, eps: None, model: None }
    }
}

impl RunConfig {
    fn samples(&self, s: Suite) -> usize {
        self.samples.unwrap_or_else(|| s.default_samples())
    }

    fn trees(&self) -> Result<Vec<(String, BlowupTree)>> {
        match &self.model {
            Some((name, text)) => Ok(vec![(name.clone(), BlowupTree::parse_json(text)?)]),
            None => Ok(chain_models()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), pass: true }
    }

    fn push(&mut self, pass: bool, mut row: Vec<String>) {
        row.push(pass.to_string());
        self.pass &= pass;
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

pub fn run_suite(s: Suite, cfg: &RunConfig) -> Result<Table> {
    match s {
        Suite::ThmA => theorem_a(cfg, true),
        Suite::ThmAPrime => theorem_a(cfg, false),
        Suite::Izumi => izumi(cfg),
        Suite::L101 => l101(cfg),
        Suite::CorC => cor_c(cfg),
        Suite::CorD => cor_d(cfg),
        Suite::CorE => cor_e(cfg),
        Suite::T106 => t106(cfg),
        Suite::Teissier => teissier(cfg),
    }
}

/// Sparse bivariate polynomials in the maximal ideal: at most 12 terms, exponents at most 20.
pub fn surface_corpus(seed: u64, n: usize) -> Vec<Polynomial> {
    let mut r = rng(seed);
    (0..n).map(|_| random_poly_m0(&mut r, 2, 12, 20)).collect()
}

/// Smallest constant over a corpus: `(max extremal norm, Lipschitz)` each divided by `ord_0`.
pub fn fit_constants<M: ChartModel + Sync>(corpus: &[Polynomial], model: &M, n: Norm) -> Result<(Rat, Rat)> {
    let big = int(i64::MAX);
    let per: Vec<(Rat, Rat)> = corpus
        .par_iter()
        .map(|f| check_theorem_a(f, model, &big, n).map(|r| (r.minimal_a(), r.minimal_a_lip())))
        .collect::<monoval::Result<_>>()?;
    let a = per.iter().map(|p| p.0.clone()).max().unwrap_or_else(|| int(0));
    let l = per.iter().map(|p| p.1.clone()).max().unwrap_or_else(|| int(0));
    Ok((a, l))
}

// fitted on each half of the corpus; the suite passes when both halves give the same constant
fn theorem_a(cfg: &RunConfig, lip: bool) -> Result<Table> {
    let s = if lip { Suite::ThmA } else { Suite::ThmAPrime };
    let n = cfg.samples(s);
    let corpus = surface_corpus(cfg.seed, n);
    let (h1, h2) = corpus.split_at(n / 2);
    let mut t = Table::new(&["model", "n", "a_first_half", "a_second_half", "a_fitted", "stable", "pass"]);
    for (name, tree) in cfg.trees()? {
        let pick = |c: (Rat, Rat)| if lip { c.1 } else { c.0 };
        let a1 = pick(fit_constants(h1, &tree, cfg.norm)?);
        let a2 = pick(fit_constants(h2, &tree, cfg.norm)?);
        let a = a1.clone().max(a2.clone());
        let stable = a1 == a2;
        t.push(stable, vec![name, n.to_string(), fmt_rat(&a1), fmt_rat(&a2), fmt_rat(&a), stable.to_string()]);
    }
    Ok(t)
}

fn izumi(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::Izumi);
    let corpus = surface_corpus(cfg.seed, n);
    let mut t = Table::new(&["model", "n", "a", "diam", "failures", "max_ratio", "bound_factor", "izumi_constants", "pass"]);
    for (name, tree) in cfg.trees()? {
        let r = izumi_check(&tree, &corpus)?;
        let failures = r.rows.iter().filter(|x| !x.pass || !x.vertex_bound_pass).count();
        let max_ratio = r.rows.iter().map(|x| &x.max / &x.min).max().unwrap_or_else(|| int(1));
        let factor = int(1) + &r.a * &r.diam;
        t.push(
            r.pass,
            vec![
                name,
                n.to_string(),
                fmt_rat(&r.a),
                fmt_rat(&r.diam),
                failures.to_string(),
                fmt_rat(&max_ratio),
                fmt_rat(&factor),
                fmt_rat_list(&r.izumi_constants),
            ],
        );
    }
    Ok(t)
}

/// One random instance on the plane model: multiplicities, face, point, `eps`, `f`.
#[derive(Debug, Clone)]
pub struct L101Case {
    pub b: Vec<u32>,
    pub sigma: Vec<u32>,
    pub bary: Vec<Rat>,
    pub eps: Rat,
    pub f: Polynomial,
}

pub fn l101_case(r: &mut CorpusRng, eps: Option<&Rat>) -> L101Case {
    let b = vec![random_u32(r, 1, 3), random_u32(r, 1, 3)];
    let sigma = match random_index(r, 3) {
        0 => vec![1],
        1 => vec![2],
        _ => vec![1, 2],
    };
    let bary = match sigma.as_slice() {
        [1] => vec![int(1), int(0)],
        [2] => vec![int(0), int(1)],
        _ => random_interior_bary(r, 2, 12),
    };
    let eps = eps.cloned().unwrap_or_else(|| random_rat(r, &rat(1, 20), &rat(1, 2), 20));
    let f = random_poly_m0(r, 2, 6, 8);
    L101Case { b, sigma, bary, eps, f }
}

fn l101(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::L101);
    let mut r = rng(cfg.seed);
    let cases: Vec<L101Case> = (0..n).map(|_| l101_case(&mut r, cfg.eps.as_ref())).collect();
    let reports: Vec<_> = cases
        .par_iter()
        .map(|c| {
            let v = simplex_point(&c.b, &c.bary)?;
            verify_l101(&c.b, &face_of(&c.sigma), &v, &c.eps, &c.f)
        })
        .collect::<monoval::Result<_>>()?;
    let mut t = Table::new(&["case", "b", "sigma", "v_bary", "eps", "f", "status", "probes", "residual_ok", "pass"]);
    for (k, (c, rep)) in cases.iter().zip(&reports).enumerate() {
        let (status, pass) = match &rep.status {
            L101Status::Verified => ("verified".to_string(), rep.residual_ok),
            L101Status::PreconditionViolated(why) => (format!("precondition: {why}"), true),
            L101Status::IdentityFailed => ("identity failed".to_string(), false),
        };
        let b: Vec<String> = c.b.iter().map(|x| x.to_string()).collect();
        let s: Vec<String> = c.sigma.iter().map(|x| x.to_string()).collect();
        t.push(
            pass,
            vec![
                k.to_string(),
                b.join(","),
                s.join(","),
                fmt_rat_list(&c.bary),
                fmt_rat(&c.eps),
                c.f.to_string(),
                status,
                rep.rows.len().to_string(),
                rep.residual_ok.to_string(),
            ],
        );
    }
    Ok(t)
}

/// Polynomials of degree `1..=15` in two variables, at most 8 terms.
pub fn degree_corpus(seed: u64, n: usize) -> Vec<Polynomial> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let d = random_u32(&mut r, 1, 15);
            random_poly_degree(&mut r, d, 8)
        })
        .collect()
}

pub fn toric_models() -> Vec<(String, ToricAtInfinity)> {
    vec![("small".to_string(), toric_model_small()), ("fine".to_string(), toric_model_fine())]
}

fn cor_c(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::CorC);
    let corpus = degree_corpus(cfg.seed, n);
    let mut t = Table::new(&["fan", "n", "b_fitted", "b_apriori", "min_is_minus_d", "pass"]);
    for (name, m) in toric_models() {
        let reps: Vec<_> =
            corpus.par_iter().map(|p| at_infinity(&m, p, cfg.norm.dual())).collect::<monoval::Result<Vec<_>>>()?;
        let fitted = reps.iter().map(|r| r.ratio.clone()).max().unwrap_or_else(|| int(0));
        let apriori = at_infinity_apriori_b(&m);
        let mins = reps.iter().filter(|r| r.min_is_minus_d).count();
        let pass = mins == n && fitted <= apriori;
        t.push(pass, vec![name, n.to_string(), fmt_rat(&fitted), fmt_rat(&apriori), format!("{mins}/{n}")]);
    }
    Ok(t)
}

/// Toric trees for the corollary experiments: their charts are monomial, so every
/// point of the dual graph is a monomial valuation in `(x, y)`.
pub fn toric_trees() -> Result<Vec<(String, BlowupTree)>> {
    (2..=4).map(|k| Ok((format!("chain{k}"), BlowupTree::chain_y(k)?))).collect()
}

/// Lipschitz constant of `chi` per unit of `ord_0`, fitted on `x` and `y`. For
/// monomial charts this bounds every `f` since `chi_f` is a minimum of
/// nonnegative combinations of `chi_x` and `chi_y`.
pub fn model_constant(tree: &BlowupTree, n: Norm) -> Result<Rat> {
    let gens = [Polynomial::var(2, 0), Polynomial::var(2, 1)];
    Ok(fit_constants(&gens, tree, n)?.1)
}

/// A point on a random face of the dual graph, and a second point of the same
/// face with weight distance below `1 / (2A)`.
fn near_pair(r: &mut CorpusRng, dual: &DualComplex, a: &Rat) -> Result<(WeightPoint, WeightPoint, Rat)> {
    let edges = dual.edges();
    loop {
        // one draw in eight lands on a vertex, where both points coincide
        let (v, w) = if edges.is_empty() || random_index(r, 8) == 0 {
            let i = dual.vertex_ids()[random_index(r, dual.vertex_ids().len())];
            let p = dual.vertex_point(i)?;
            (p.clone(), p)
        } else {
            let (i, j) = edges[random_index(r, edges.len())];
            let l = random_rat(r, &rat(1, 24), &rat(23, 24), 24);
            let step = random_rat(r, &rat(-1, 24), &rat(1, 24), 96);
            let l2 = (&l + step).max(int(0)).min(int(1));
            (
                dual.from_barycentric(&[i, j], &[l.clone(), int(1) - &l])?,
                dual.from_barycentric(&[i, j], &[l2.clone(), int(1) - &l2])?,
            )
        };
        let d = v.linf_distance(&w);
        if &d * a * int(2) < int(1) {
            return Ok((v, w, d));
        }
    }
}

pub fn pair_samples(seed: u64, n: usize, tree: &BlowupTree, a: &Rat) -> Result<Vec<PairSample>> {
    let (dual, _) = tree.dual_graph()?;
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let (v, w, dist) = near_pair(&mut r, &dual, a)?;
            Ok(PairSample { v: tree.monomial_weights(&v)?, w: tree.monomial_weights(&w)?, dist })
        })
        .collect()
}

pub fn quad_samples(seed: u64, n: usize, tree: &BlowupTree, a: &Rat) -> Result<Vec<QuadSample>> {
    let (dual, _) = tree.dual_graph()?;
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let (v, w, d) = near_pair(&mut r, &dual, a)?;
            let (vp, wp, dp) = near_pair(&mut r, &dual, a)?;
            Ok(QuadSample {
                v: tree.monomial_weights(&v)?,
                vp: tree.monomial_weights(&vp)?,
                w: tree.monomial_weights(&w)?,
                wp: tree.monomial_weights(&wp)?,
                d,
                dp,
            })
        })
        .collect()
}

pub const INCLUSION_LEVELS: [u32; 3] = [8, 16, 32];

fn cor_d(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::CorD);
    let mut t = Table::new(&[
        "model", "a", "alpha_v", "alpha_w", "dist", "inclusion", "ratio_1", "ratio_2", "bound_1", "bound_2", "pass",
    ]);
    for (k, (name, tree)) in toric_trees()?.into_iter().enumerate() {
        let a = model_constant(&tree, cfg.norm)?;
        let pairs = pair_samples(cfg.seed.wrapping_add(k as u64), n, &tree, &a)?;
        let rep = lipschitz_experiment_d(&pairs, &a, &INCLUSION_LEVELS)?;
        for row in &rep.rows {
            let ok = row.inclusion && row.ratios.iter().zip(&rep.bounds).all(|(x, b)| x <= b);
            t.push(
                ok,
                vec![
                    name.clone(),
                    fmt_rat(&a),
                    fmt_rat_list(&row.alpha_v),
                    fmt_rat_list(&row.alpha_w),
                    fmt_rat(&row.dist),
                    row.inclusion.to_string(),
                    fmt_rat(&row.ratios[1]),
                    fmt_rat(&row.ratios[2]),
                    fmt_rat(&rep.bounds[1]),
                    fmt_rat(&rep.bounds[2]),
                ],
            );
        }
    }
    Ok(t)
}

fn cor_e(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::CorE);
    let mut t = Table::new(&[
        "model", "a", "beta_v_vp", "beta_w_wp", "diff", "ratio", "bound", "submultiplicative", "reciprocal", "near_one",
        "pass",
    ]);
    for (k, (name, tree)) in toric_trees()?.into_iter().enumerate() {
        let a = model_constant(&tree, cfg.norm)?;
        let quads = quad_samples(cfg.seed.wrapping_add(k as u64), n, &tree, &a)?;
        let rep = lipschitz_experiment_e(&quads, &a)?;
        for row in &rep.rows {
            let ok = row.diff <= row.bound && row.submultiplicative && row.reciprocal && row.near_one;
            t.push(
                ok,
                vec![
                    name.clone(),
                    fmt_rat(&a),
                    fmt_rat(&row.beta_vvp),
                    fmt_rat(&row.beta_wwp),
                    fmt_rat(&row.diff),
                    fmt_rat(&row.ratio),
                    fmt_rat(&row.bound),
                    row.submultiplicative.to_string(),
                    row.reciprocal.to_string(),
                    row.near_one.to_string(),
                ],
            );
        }
    }
    Ok(t)
}

pub const REFERENCE_IDEALS: [&str; 3] = ["x, y", "x^3, y^2", "x^2, x*y, y^3"];
pub const T107_HORIZON: u32 = 20;

/// `max(N from the closure scan, ceil of the largest hat - ord gap)`.
pub fn single_n(n_scan: u32, max_gap: &Rat) -> u32 {
    let g: u32 = max_gap.ceil().to_integer().try_into().unwrap_or(u32::MAX);
    n_scan.max(g)
}

fn t106(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::T106);
    let mut r = rng(cfg.seed);
    let corpus: Vec<Polynomial> = (0..n).map(|_| random_poly_m0(&mut r, 2, 8, 12)).collect();
    let mut t = Table::new(&["ideal", "rees", "n_t107", "n_single", "max_gap", "hat_is_rees_min", "sandwich", "pass"]);
    for text in REFERENCE_IDEALS {
        let ideal = MonomialIdeal::parse(text, Some(2))?;
        let rees = ideal.rees_valuations()?;
        let scan = t107_scan(&ideal, T107_HORIZON)?;
        let gaps: Vec<(u32, Rat, bool)> = corpus
            .par_iter()
            .map(|f| {
                let (ord, hat) = t106_gap(&ideal, f)?;
                let by_rees = rees
                    .iter()
                    .map(|t| monoval::valuation::eval_valuation(t, f).map(|v| v.finite().unwrap() / ideal_value(t, &ideal)))
                    .collect::<monoval::Result<Vec<Rat>>>()?
                    .into_iter()
                    .min()
                    .unwrap();
                Ok((ord, hat.clone(), hat == by_rees))
            })
            .collect::<monoval::Result<_>>()?;
        let max_gap = gaps.iter().map(|(o, h, _)| h - int(*o as i64)).max().unwrap_or_else(|| int(0));
        let single = single_n(scan.n_min, &max_gap);
        let hat_ok = gaps.iter().all(|g| g.2);
        let sandwich = gaps.iter().all(|(o, h, _)| {
            let o = int(*o as i64);
            *h >= o && *h <= o + int(single as i64)
        });
        let pass = hat_ok && sandwich && single <= 3;
        let rees_s: Vec<String> = rees.iter().map(|v| format!("({})", fmt_rat_list(v))).collect();
        t.push(
            pass,
            vec![
                text.to_string(),
                rees_s.join(" "),
                scan.n_min.to_string(),
                single.to_string(),
                fmt_rat(&max_gap),
                hat_ok.to_string(),
                sandwich.to_string(),
            ],
        );
    }
    Ok(t)
}

/// Full-support weights alternating between two and three variables, entries in `[1/12, 2]`.
pub fn weight_corpus(seed: u64, n: usize) -> Vec<Vec<Rat>> {
    let mut r = rng(seed);
    (0..n)
        .map(|k| {
            let m = 2 + k % 2;
            (0..m).map(|_| random_rat(&mut r, &rat(1, 12), &int(2), 12)).collect()
        })
        .collect()
}

fn teissier(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.samples(Suite::Teissier);
    let ws = weight_corpus(cfg.seed, n);
    let alphas: Vec<Vec<Rat>> = ws.par_iter().map(|t| alpha_exact(t)).collect::<monoval::Result<_>>()?;
    let mut t = Table::new(&["t", "alpha", "alpha1_max_t", "teissier", "alpha_m_is_volume", "pass"]);
    for (w, a) in ws.iter().zip(&alphas) {
        let m = w.len();
        let smooth = &a[1] * w.iter().max().unwrap();
        let te = (1..m).all(|i| &a[i] * &a[i] <= &a[i - 1] * &a[i + 1]);
        let vol = a[m] == volume(w)?;
        let pass = smooth == int(1) && te && vol && a[0] == int(1);
        t.push(pass, vec![fmt_rat_list(w), fmt_rat_list(a), fmt_rat(&smooth), te.to_string(), vol.to_string()]);
    }
    Ok(t)
}

/// Reads a named model file: the stem of the path becomes the row label.
pub fn read_model(path: &str) -> Result<(String, String)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let stem = std::path::Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or(path).to_string();
    Ok((stem, text))
}

pub fn parse_suite_list(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let out: Result<Vec<Suite>> = s.split(',').map(str::parse).collect();
    match out {
        Ok(v) if !v.is_empty() => Ok(v),
        Ok(_) => bail!("no suites given"),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn csv_quotes_lists() {
        let mut t = Table::new(&["a", "pass"]);
        t.push(true, vec!["1/2,1".into()]);
        assert_eq!(t.to_csv().unwrap(), "a,pass\n\"1/2,1\",true\n");
    }

    #[test]
    fn single_n_takes_ceiling() {
        assert_eq!(single_n(1, &rat(7, 6)), 2);
        assert_eq!(single_n(2, &rat(1, 2)), 2);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = RunConfig { samples: Some(6), ..RunConfig::default() };
        for s in [Suite::Teissier, Suite::L101, Suite::CorD, Suite::CorE, Suite::Izumi] {
            assert!(run_suite(s, &cfg).unwrap().pass, "{s}");
        }
    }
}
