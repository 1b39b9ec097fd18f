use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use monoval::complex::{DualComplex, WeightPoint};
use monoval::multiplicities::{
    alpha, linking_brute, linking_lembdiv, linking_number, volume, volume_covolume, volume_oracle, MonomialIdeal,
};
use monoval::scalar::{fmt_rat, fmt_rat_list, parse_rat_list};
use monoval::subdivision::{barycentric_outside_star, is_projective, special_subdivide};
use monoval::surface::{vertex_bound_constants, BlowupTree};
use monoval::valuation::{chi_on_face, eval_valuation, extremal_points, newton_polyhedron, FaceDomain};
use monoval_cli::{parse_suite_list, read_model, run_suite, RunConfig};
use monoval::{int, parse_rat, Ext, Norm, Polynomial, Rat};

#[derive(Parser)]
#[command(name = "monoval", version, about = "Exact monomial valuations, dual complexes and multiplicities")]
struct Cli {
    /// Worker threads for parallel suites.
    #[arg(long, env = "MONOVAL_THREADS", global = true)]
    threads: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    L1,
    Linf,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::L1 => Norm::L1,
            NormArg::Linf => Norm::LInf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    ChiEdge,
    AlphaSegment,
    Newton,
}

#[derive(Subcommand)]
enum Cmd {
    /// Value of f at a point of a model (monomial weights, dual complex or blowup tree).
    Eval {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        poly: String,
        /// Weights, comma separated; on a complex or tree one entry per vertex.
        #[arg(long, conflicts_with = "vertices")]
        point: Option<String>,
        /// Print the value at every vertex.
        #[arg(long)]
        vertices: bool,
    },
    /// The concave function chi_f on the simplex with multiplicities b.
    Chi {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value = "l1")]
        norm: NormArg,
    },
    /// Extremal points and facets of a Newton polyhedron (of f or of a monomial ideal).
    Newton {
        #[arg(long, required_unless_present = "ideal")]
        poly: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Special subdivision of the simplex at a point of a face.
    Subdivide {
        #[arg(long)]
        b: String,
        #[arg(long)]
        sigma: String,
        /// Barycentric coordinates of the point on the whole simplex.
        #[arg(long)]
        point: String,
        #[arg(long)]
        eps: String,
        /// Also simplicialize outside the star.
        #[arg(long)]
        simplicial: bool,
    },
    /// Dual graph, intersection matrix and vertex-bound constants of a blowup tree.
    Dualgraph {
        #[arg(long)]
        model: String,
    },
    /// Mixed-multiplicity vector of a monomial valuation.
    Alpha {
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "4,8,16")]
        levels: String,
    },
    /// Volume of a monomial valuation, exact and by counting at level n.
    Volume {
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 64)]
        n: u32,
    },
    /// Linking number of two monomial valuations.
    Beta {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 20)]
        degree: u32,
        #[arg(long, default_value_t = 512)]
        n: u32,
    },
    /// Run report suites: thmA, thmAprime, izumi, L101, corC, corD, corE, t106, teissier (comma separated, or all).
    Report {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value = "l1")]
        norm: NormArg,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        model: Option<String>,
    },
    /// Sampled function graphs as CSV.
    Plotdata {
        #[arg(value_enum)]
        kind: PlotKind,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 2)]
        index: usize,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("assertion failure");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&str>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {p}")),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn poly(s: &str, arity: Option<usize>) -> Result<Polynomial> {
    Polynomial::parse_any(s, arity).with_context(|| format!("polynomial {s:?}"))
}

fn rats(s: &str, what: &str) -> Result<Vec<Rat>> {
    parse_rat_list(s).with_context(|| format!("{what} {s:?}"))
}

fn ints(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',').map(|x| x.trim().parse::<u32>().with_context(|| format!("{what} {s:?}"))).collect()
}

fn ext(v: &Ext<Rat>) -> String {
    match v {
        Ext::Finite(x) => fmt_rat(x),
        Ext::Infinity => "inf".into(),
    }
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

enum Model {
    Monomial,
    Complex(DualComplex),
    Tree(BlowupTree),
}

fn load_model(path: Option<&str>) -> Result<Model> {
    let Some(path) = path else { return Ok(Model::Monomial) };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let v: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    if v.get("nodes").is_some() {
        Ok(Model::Tree(BlowupTree::parse_json(&text).with_context(|| format!("tree in {path}"))?))
    } else if v.get("vertices").is_some() {
        Ok(Model::Complex(DualComplex::parse_json(&text).with_context(|| format!("complex in {path}"))?))
    } else {
        bail!("{path}: expected a blowup tree (\"nodes\") or a dual complex (\"vertices\")")
    }
}

fn point_on(ids: &[u32], t: &[Rat]) -> Result<WeightPoint> {
    if ids.len() != t.len() {
        bail!("point has {} weights, model has {} vertices", t.len(), ids.len());
    }
    Ok(WeightPoint::new(ids.iter().copied().zip(t.iter().cloned()).filter(|(_, x)| *x != int(0))))
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    match &cli.cmd {
        Cmd::Eval { model, poly: p, point, vertices } => {
            let model = load_model(model.as_deref())?;
            if !*vertices && point.is_none() {
                bail!("give --point or --vertices");
            }
            let t = point.as_deref().map(|s| rats(s, "point")).transpose()?;
            match model {
                Model::Monomial => {
                    let t = t.context("--vertices needs a model")?;
                    let f = poly(p, Some(t.len()))?;
                    Ok((format!("{}\n", ext(&eval_valuation(&t, &f)?)), true))
                }
                Model::Complex(c) => {
                    let ids = c.vertex_ids();
                    let f = poly(p, Some(ids.len()))?;
                    if *vertices {
                        let mut rows = Vec::new();
                        for &i in &ids {
                            let t = c.vertex_point(i)?.on(&ids);
                            rows.push(vec![i.to_string(), ext(&eval_valuation(&t, &f)?)]);
                        }
                        return Ok((csv(&["vertex", "value"], &rows)?, true));
                    }
                    let w = point_on(&ids, t.as_ref().unwrap())?;
                    c.check_point(&w)?;
                    Ok((format!("{}\n", ext(&eval_valuation(&w.on(&ids), &f)?)), true))
                }
                Model::Tree(tree) => {
                    let f = poly(p, Some(2))?;
                    if *vertices {
                        let vals = tree.vertex_values(&f)?;
                        let rows: Vec<Vec<String>> =
                            vals.iter().enumerate().map(|(k, v)| vec![(k + 1).to_string(), fmt_rat(v)]).collect();
                        return Ok((csv(&["vertex", "value"], &rows)?, true));
                    }
                    let ids: Vec<u32> = (1..=tree.len() as u32).collect();
                    let w = point_on(&ids, t.as_ref().unwrap())?;
                    Ok((format!("{}\n", fmt_rat(&tree.eval_on_model(&f, &w)?)), true))
                }
            }
        }
        Cmd::Chi { poly: p, b, norm } => {
            let f = poly(p, None)?;
            let b = match b {
                Some(s) => ints(s, "b")?,
                None => vec![1; f.arity()],
            };
            let f = f.with_arity(b.len())?;
            let ids: Vec<u32> = (1..=b.len() as u32).collect();
            let chi = chi_on_face(&f, &FaceDomain::new(ids, b)?)?;
            let n: Norm = (*norm).into();
            let mut rows: Vec<Vec<String>> =
                chi.forms().iter().map(|a| vec!["form".into(), fmt_rat_list(&a.coeffs)]).collect();
            rows.push(vec!["lipschitz".into(), fmt_rat(&chi.lipschitz(n)?)]);
            rows.push(vec!["min".into(), fmt_rat(&chi.min_value())]);
            rows.push(vec!["max".into(), fmt_rat(&chi.max_value()?)]);
            Ok((csv(&["kind", "value"], &rows)?, true))
        }
        Cmd::Newton { poly: p, ideal } => {
            let np = match (p, ideal) {
                (_, Some(i)) => MonomialIdeal::parse(i, None).context("ideal")?.newton_polyhedron()?,
                (Some(p), None) => newton_polyhedron(&poly(p, None)?)?,
                (None, None) => bail!("give --poly or --ideal"),
            };
            let mut rows: Vec<Vec<String>> =
                extremal_points(&np).iter().map(|v| vec!["vertex".into(), fmt_rat_list(v), String::new()]).collect();
            for f in np.facets() {
                rows.push(vec!["facet".into(), fmt_rat_list(&f.normal), fmt_rat(&f.rhs)]);
            }
            if np.is_cobounded() {
                rows.push(vec!["covolume".into(), fmt_rat(&np.covolume()?), String::new()]);
            }
            Ok((csv(&["kind", "coords", "rhs"], &rows)?, true))
        }
        Cmd::Subdivide { b, sigma, point, eps, simplicial } => {
            let b = ints(b, "b")?;
            let c = DualComplex::simplex(&b)?;
            let ids = c.vertex_ids();
            let sigma: Vec<u32> = ints(sigma, "sigma")?;
            let v = c.from_barycentric(&ids, &rats(point, "point")?)?;
            let eps = parse_rat(eps).context("eps")?;
            let (d, h, scaled) = special_subdivide(&c, &sigma.iter().copied().collect(), &v, &eps)?;
            let projective = is_projective(&d, &h);
            let out = if *simplicial {
                let se = sigma.iter().map(|j| scaled[j]).collect();
                barycentric_outside_star(&d, &se)?
            } else {
                d
            };
            let j = json!({
                "projective": projective,
                "simplicial": out.is_simplicial(),
                "complex": out.to_json(),
            });
            Ok((serde_json::to_string_pretty(&j)? + "\n", projective))
        }
        Cmd::Dualgraph { model } => {
            let (_, text) = read_model(model)?;
            let tree = BlowupTree::parse_json(&text)?;
            let (dual, data) = tree.dual_graph()?;
            let (_, _, vb) = vertex_bound_constants(&data)?;
            let j = json!({
                "b": data.b,
                "edges": dual.edges(),
                "intersection_matrix": data.matrix,
                "diameter": fmt_rat(&dual.diameter()),
                "vertex_bound": vb,
            });
            Ok((serde_json::to_string_pretty(&j)? + "\n", true))
        }
        Cmd::Alpha { t, levels } => {
            let t = rats(t, "t")?;
            let levels = ints(levels, "levels")?;
            let a = alpha(&t, &levels)?;
            let mut header = vec!["i".to_string(), "exact".to_string()];
            header.extend(a.oracle.iter().map(|(n, _)| format!("oracle_{n}")));
            let rows: Vec<Vec<String>> = (0..a.exact.len())
                .map(|i| {
                    let mut r = vec![i.to_string(), fmt_rat(&a.exact[i])];
                    r.extend(a.oracle.iter().map(|(_, o)| fmt_rat(&o[i])));
                    r
                })
                .collect();
            let h: Vec<&str> = header.iter().map(String::as_str).collect();
            Ok((csv(&h, &rows)?, a.teissier()))
        }
        Cmd::Volume { t, n } => {
            let t = rats(t, "t")?;
            let exact = volume(&t)?;
            let cov = volume_covolume(&t)?;
            let o = volume_oracle(&t, *n)?;
            let rows = vec![vec![fmt_rat(&exact), fmt_rat(&cov), n.to_string(), fmt_rat(&o)]];
            Ok((csv(&["exact", "covolume", "n", "oracle"], &rows)?, exact == cov))
        }
        Cmd::Beta { v, w, degree, n } => {
            let v = rats(v, "v")?;
            let w = rats(w, "w")?;
            let closed = linking_number(&v, &w)?;
            let brute = linking_brute(&v, &w, *degree)?;
            let limit = linking_lembdiv(&v, &w, *n)?;
            let rows = vec![vec![fmt_rat(&closed), fmt_rat(&brute), fmt_rat(&limit)]];
            Ok((csv(&["closed", "brute", "lembdiv"], &rows)?, closed == brute))
        }
        Cmd::Report { suite, seed, samples, norm, eps, model } => {
            let suites = parse_suite_list(suite)?;
            let cfg = RunConfig {
                seed: *seed,
                samples: *samples,
                norm: (*norm).into(),
                eps: eps.as_deref().map(parse_rat).transpose().context("eps")?,
                model: model.as_deref().map(read_model).transpose()?,
            };
            let mut text = String::new();
            let mut ok = true;
            for s in suites {
                let t = run_suite(s, &cfg).map_err(|e| e.context(format!("suite {s}")))?;
                if text.is_empty() && suites_is_single(suite) {
                    text = t.to_csv()?;
                } else {
                    text.push_str(&format!("# {s}\n"));
                    text.push_str(&t.to_csv()?);
                }
                ok &= t.pass;
            }
            Ok((text, ok))
        }
        Cmd::Plotdata { kind, poly: p, b, from, to, index, points } => plotdata(*kind, p, b, from, to, *index, *points),
    }
}

fn suites_is_single(s: &str) -> bool {
    s != "all" && !s.contains(',')
}

fn plotdata(
    kind: PlotKind,
    p: &Option<String>,
    b: &Option<String>,
    from: &Option<String>,
    to: &Option<String>,
    index: usize,
    points: usize,
) -> Result<(String, bool)> {
    if points < 2 {
        bail!("--points must be at least 2");
    }
    let steps = (points - 1) as i64;
    let param = |k: usize| Rat::new((k as i64).into(), steps.into());
    match kind {
        PlotKind::ChiEdge => {
            let f = poly(p.as_deref().context("--poly")?, Some(2))?;
            let b = match b {
                Some(s) => ints(s, "b")?,
                None => vec![1, 1],
            };
            if b.len() != 2 {
                bail!("chi-edge needs two multiplicities");
            }
            let dom = FaceDomain::new(vec![1, 2], b)?;
            let chi = chi_on_face(&f, &dom)?;
            let rows: Vec<Vec<String>> = (0..points)
                .map(|k| {
                    let l = param(k);
                    let t = dom.from_barycentric(&[int(1) - &l, l.clone()]);
                    vec![fmt_rat(&l), fmt_rat(&chi.value(&t))]
                })
                .collect();
            Ok((csv(&["parameter", "value"], &rows)?, true))
        }
        PlotKind::AlphaSegment => {
            let a = rats(from.as_deref().context("--from")?, "from")?;
            let z = rats(to.as_deref().context("--to")?, "to")?;
            if a.len() != z.len() || index > a.len() {
                bail!("segment endpoints must share a dimension >= index");
            }
            let rows: Vec<Vec<String>> = (0..points)
                .map(|k| {
                    let l = param(k);
                    let t: Vec<Rat> = a.iter().zip(&z).map(|(x, y)| (int(1) - &l) * x + &l * y).collect();
                    monoval::multiplicities::alpha_exact(&t).map(|al| vec![fmt_rat(&l), fmt_rat(&al[index])])
                })
                .collect::<monoval::Result<_>>()?;
            Ok((csv(&["parameter", "value"], &rows)?, true))
        }
        PlotKind::Newton => {
            let f = poly(p.as_deref().context("--poly")?, None)?;
            let np = newton_polyhedron(&f)?;
            let rows: Vec<Vec<String>> =
                extremal_points(&np).iter().enumerate().map(|(k, v)| vec![k.to_string(), fmt_rat_list(v)]).collect();
            Ok((csv(&["index", "point"], &rows)?, true))
        }
    }
}
