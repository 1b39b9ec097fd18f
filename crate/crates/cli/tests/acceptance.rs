//! Acceptance suite: one PASS/FAIL line per criterion. Each criterion compares
//! the library against an oracle written here from the definitions.
//!
//! The process exits 0 after reporting; set `MONOVAL_ACCEPTANCE_STRICT=1` to
//! exit 1 when any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;

use monoval::complex::DualComplex;
use monoval::corpus::{random_bary, random_interior_bary, random_poly, random_rat, random_u32, rng};
use monoval::multiplicities::{
    alpha_exact, ideal_inclusion, linking_brute, linking_lembdiv, linking_number, mixed_multiplicities, t106_gap,
    t107_scan, volume, volume_covolume, volume_oracle, MonomialIdeal,
};
use monoval::subdivision::{
    barycentric_outside_star, face_of, projectivity, simplex_point, special_subdivide, verify_l101, L101Status,
    Projectivity,
};
use monoval::surface::{izumi_check, vertex_bound_constants, BlowupTree};
use monoval::valuation::{chi_on_face, eval_valuation, ChartModel, FaceDomain};
use monoval::{int, rat, Ext, Norm, Polynomial, Rat};
use monoval_cli::{
    degree_corpus, fit_constants, l101_case, model_constant, pair_samples, quad_samples, single_n, surface_corpus,
    toric_models, toric_trees, weight_corpus, INCLUSION_LEVELS, REFERENCE_IDEALS, T107_HORIZON,
};

type Outcome = Result<(bool, String), String>;

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn abs(r: &Rat) -> Rat {
    if *r < int(0) {
        -r.clone()
    } else {
        r.clone()
    }
}

fn dot(t: &[Rat], a: &[u32]) -> Rat {
    t.iter().zip(a).map(|(x, &k)| x * int(k as i64)).sum()
}

/// `min over the support of <t, alpha>`.
fn min_form(t: &[Rat], f: &Polynomial) -> Rat {
    f.support().map(|a| dot(t, a)).min().unwrap()
}

fn lerp(l: &Rat, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| l * x + (int(1) - l) * y).collect()
}

// 1. concavity and evaluation consistency of chi_f
fn c1() -> Outcome {
    let mut r = rng(101);
    let mut failures = 0;
    for k in 0..1000 {
        let m = 2 + k % 2;
        let f = random_poly(&mut r, m, 12, 20);
        let dom = FaceDomain::standard(m);
        let chi = chi_on_face(&f, &dom).map_err(e)?;
        let support: BTreeSet<Vec<Rat>> =
            f.support().map(|a| a.iter().map(|&x| int(x as i64)).collect()).collect();
        if !chi.forms().iter().all(|a| support.contains(&a.coeffs)) {
            failures += 1;
            continue;
        }
        for _ in 0..4 {
            let t1 = dom.from_barycentric(&random_bary(&mut r, m, 20));
            let t2 = dom.from_barycentric(&random_bary(&mut r, m, 20));
            let l = random_rat(&mut r, &int(0), &int(1), 10);
            let mid = lerp(&l, &t1, &t2);
            let direct = eval_valuation(&t1, &f).map_err(e)?;
            let consistent = [&t1, &t2, &mid].iter().all(|t| chi.value(t) == min_form(t, &f))
                && direct == Ext::Finite(min_form(&t1, &f));
            let concave = chi.value(&mid) >= &l * chi.value(&t1) + (int(1) - &l) * chi.value(&t2);
            if !consistent || !concave {
                failures += 1;
            }
        }
    }
    Ok((failures == 0, format!("1000 polynomials (m = 2, 3), 4000 probes, {failures} failures")))
}

/// Vertices of `conv(S) + R^2_{>=0}` by a staircase and lower hull.
fn newton_vertices_2d(pts: &[Vec<u32>]) -> Vec<(i64, i64)> {
    let mut p: Vec<(i64, i64)> = pts.iter().map(|a| (a[0] as i64, a[1] as i64)).collect();
    p.sort();
    let mut stair: Vec<(i64, i64)> = Vec::new();
    for q in p {
        if stair.last().map_or(true, |s| q.1 < s.1) {
            stair.push(q);
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for q in stair {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    hull
}

fn oracle_a_prime(corpus: &[Polynomial], tree: &BlowupTree) -> Result<Rat, String> {
    let mut best = int(0);
    for f in corpus {
        let ord0 = int(f.min_total_degree().finite().unwrap() as i64);
        for dom in tree.faces() {
            let g = tree.expand(&dom, f).map_err(e)?;
            let pts: Vec<Vec<u32>> = g.support().cloned().collect();
            let norm = if g.arity() == 1 {
                int(pts.iter().map(|a| a[0]).min().unwrap() as i64)
            } else {
                int(newton_vertices_2d(&pts).iter().map(|(x, y)| x + y).max().unwrap())
            };
            best = best.max(norm / &ord0);
        }
    }
    Ok(best)
}

// 2. constant A' fitted per model, equal on both halves of the corpus
fn c2() -> Outcome {
    let corpus = surface_corpus(2, 200);
    let (h1, h2) = corpus.split_at(100);
    let mut ok = true;
    let mut detail = Vec::new();
    for k in 1..=5 {
        let tree = BlowupTree::chain_y(k).map_err(e)?;
        let a1 = fit_constants(h1, &tree, Norm::L1).map_err(e)?.0;
        let a2 = fit_constants(h2, &tree, Norm::L1).map_err(e)?.0;
        let o1 = oracle_a_prime(h1, &tree)?;
        let o2 = oracle_a_prime(h2, &tree)?;
        let agree = a1 == o1 && a2 == o2;
        ok &= agree && a1 == a2;
        detail.push(format!("chain{k} {a1}|{a2}{}", if agree { "" } else { " (oracle mismatch)" }));
    }
    Ok((ok, format!("A per half: {}", detail.join(", "))))
}

// 3. vertex bound / Izumi with constants from the intersection matrix
fn c3() -> Outcome {
    let corpus = surface_corpus(3, 100);
    let mut failures = 0;
    let mut disagreements = 0;
    for k in 1..=5 {
        let tree = BlowupTree::chain_y(k).map_err(e)?;
        let (dual, data) = tree.dual_graph().map_err(e)?;
        let (a, _, _) = vertex_bound_constants(&data).map_err(e)?;
        let factor = int(1) + &a * dual.diameter();
        let b = tree.multiplicities();
        let mut oracle_ok = true;
        for f in &corpus {
            let vals: Vec<Rat> = (0..tree.len())
                .map(|i| match tree.ord_second_chart(i, f).map_err(e)? {
                    Ext::Finite(o) => Ok(rat(o as i64, b[i] as i64)),
                    Ext::Infinity => Err("infinite order".to_string()),
                })
                .collect::<Result<_, String>>()?;
            let min = vals.iter().min().unwrap();
            let max = vals.iter().max().unwrap();
            if *max > &factor * min {
                failures += 1;
                oracle_ok = false;
            }
        }
        if izumi_check(&tree, &corpus).map_err(e)?.pass != oracle_ok {
            disagreements += 1;
        }
    }
    Ok((
        failures == 0 && disagreements == 0,
        format!("5 models x 100 f, {failures} failures, {disagreements} library/oracle disagreements"),
    ))
}

/// A concave function is affine on a simplex iff its value at the barycenter is the mean of the vertex values.
fn affine_on(f: &Polynomial, pts: &[Vec<Rat>]) -> bool {
    let n = int(pts.len() as i64);
    let bary: Vec<Rat> = (0..pts[0].len()).map(|i| pts.iter().map(|p| p[i].clone()).sum::<Rat>() / &n).collect();
    let mean = pts.iter().map(|p| min_form(p, f)).sum::<Rat>() / &n;
    min_form(&bary, f) == mean
}

// 4. identity on the special subdivision, with an independent precondition test
fn c4() -> Outcome {
    let mut r = rng(4);
    let (mut verified, mut violated, mut wrong, mut tries) = (0, 0, 0, 0);
    while verified < 50 {
        tries += 1;
        if tries > 2000 {
            return Ok((false, format!("only {verified} admissible instances in 2000 draws")));
        }
        let c = l101_case(&mut r, None);
        let e_pos = |j: usize| -> Vec<Rat> {
            let mut p = vec![int(0); 2];
            p[j] = rat(1, c.b[j] as i64);
            p
        };
        let v: Vec<Rat> = (0..2).map(|j| &c.bary[j] / int(c.b[j] as i64)).collect();
        let scaled: Vec<Vec<Rat>> = (0..2).map(|j| lerp(&c.eps, &e_pos(j), &v)).collect();
        let sigma_eps: Vec<Vec<Rat>> = c.sigma.iter().map(|&j| scaled[j as usize - 1].clone()).collect();
        let pre = affine_on(&c.f, &sigma_eps) && scaled.iter().all(|p| affine_on(&c.f, &[v.clone(), p.clone()]));
        let w = simplex_point(&c.b, &c.bary).map_err(e)?;
        let rep = verify_l101(&c.b, &face_of(&c.sigma), &w, &c.eps, &c.f).map_err(e)?;
        match (&rep.status, pre) {
            (L101Status::Verified, true) => {
                verified += 1;
                if !rep.residual_ok {
                    wrong += 1;
                }
            }
            (L101Status::PreconditionViolated(_), false) => violated += 1,
            _ => {
                wrong += 1;
                if pre {
                    verified += 1;
                }
            }
        }
    }
    Ok((
        wrong == 0,
        format!("{verified} admissible instances exact, {violated} precondition violations flagged, {wrong} failures"),
    ))
}

// 5. projectivity and simplicialization of random special subdivisions
fn c5() -> Outcome {
    let mut r = rng(5);
    let mut failures = Vec::new();
    for k in 0..100 {
        let m = 2 + k % 2;
        let b: Vec<u32> = (0..m).map(|_| random_u32(&mut r, 1, 3)).collect();
        let sigma: Vec<u32> = loop {
            let s: Vec<u32> = (1..=m as u32).filter(|_| random_u32(&mut r, 0, 1) == 1).collect();
            if !s.is_empty() {
                break s;
            }
        };
        let s_bary = random_interior_bary(&mut r, sigma.len(), 12);
        let eps = random_rat(&mut r, &rat(1, 20), &rat(1, 2), 20);
        let c = DualComplex::simplex(&b).map_err(e)?;
        let v = c.from_barycentric(&sigma, &s_bary).map_err(e)?;
        let (d, h, scaled) = special_subdivide(&c, &face_of(&sigma), &v, &eps).map_err(e)?;
        let oracle = |t: &[Rat]| -> Rat {
            let mut best = -(int(1) - &eps);
            for (q, &j) in sigma.iter().enumerate() {
                let i = j as usize - 1;
                let x = -(int(b[i] as i64) * &t[i]) / &s_bary[q];
                if x > best {
                    best = x;
                }
            }
            best
        };
        let h_agrees = d.vertex_ids().iter().all(|&id| h.eval(d.position(id)) == oracle(d.position(id)));
        let proj = projectivity(&d, &oracle);
        let sigma_eps = sigma.iter().map(|j| scaled[j]).collect();
        let dp = barycentric_outside_star(&d, &sigma_eps).map_err(e)?;
        let star_kept = d.positioned_star(&sigma_eps) == dp.positioned_star(&sigma_eps);
        let mult = (1..=m as u32).zip(b.iter().copied()).collect();
        let covers = |x: &monoval::subdivision::PolyComplex| -> Result<bool, String> {
            let vols = x.normalized_volume_by_carrier(&mult).map_err(e)?;
            Ok(!vols.is_empty() && vols.values().all(|v| *v == int(1)))
        };
        let ok = h_agrees && proj == Projectivity::Projective && dp.is_simplicial() && star_kept && covers(&dp)?;
        if !ok {
            failures.push(k);
        }
    }
    Ok((failures.is_empty(), format!("100 instances (m = 2, 3), failures {failures:?}")))
}

/// `#{alpha in N^m : sum p_i alpha_i < big}` by direct summation.
fn count_below_int(p: &[i64], big: i64) -> i64 {
    match p.len() {
        1 => (big + p[0] - 1) / p[0],
        _ => {
            let mut total = 0;
            let mut a = 0;
            while p[0] * a < big {
                total += count_below_int(&p[1..], big - p[0] * a);
                a += 1;
            }
            total
        }
    }
}

// 6. volume exact by covolume, counting oracle within 5 %
fn c6() -> Outcome {
    let mut r = rng(6);
    let mut exact_fail = 0;
    let mut worst = 0.0f64;
    let mut route_fail = 0;
    for k in 0..100 {
        let m = 2 + k % 2;
        let n: i64 = if m == 2 { 200 } else { 40 };
        let t = random_interior_bary(&mut r, m, 20);
        let inv: Rat = int(1) / t.iter().fold(int(1), |acc, x| acc * x);
        if volume(&t).map_err(e)? != inv || volume_covolume(&t).map_err(e)? != inv {
            exact_fail += 1;
        }
        let p: Vec<i64> = t.iter().map(|x| (x * int(20)).to_integer().try_into().unwrap()).collect();
        let cnt = count_below_int(&p, 20 * n);
        let fact: i64 = (1..=m as i64).product();
        let est = Rat::new((cnt * fact).into(), n.pow(m as u32).into());
        if volume_oracle(&t, n as u32).map_err(e)? != est {
            route_fail += 1;
        }
        let rel = abs(&((&est - &inv) / &inv));
        worst = worst.max(monoval::scalar::to_f64(&rel));
    }
    Ok((
        exact_fail == 0 && route_fail == 0 && worst <= 0.05,
        format!("100 weights, {exact_fail} exact failures, {route_fail} counting-route mismatches, worst oracle error {:.3}%", worst * 100.0),
    ))
}

/// `2 * area` of the complement of the Newton polygon of a primary monomial ideal in two variables.
fn e2(gens: &[Vec<u32>]) -> Rat {
    let h = newton_vertices_2d(gens);
    let mut area2 = 0i64;
    for w in h.windows(2) {
        area2 += (w[1].0 - w[0].0) * (w[0].1 + w[1].1);
    }
    int(area2)
}

fn product_gens(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    a.iter().flat_map(|x| b.iter().map(move |y| vec![x[0] + y[0], x[1] + y[1]])).collect()
}

// 7. alpha vector: smooth case, Teissier inequalities, a mixed multiplicity
fn c7() -> Outcome {
    let ws = weight_corpus(7, 100);
    let mut fail = 0;
    for t in &ws {
        let a = alpha_exact(t).map_err(e)?;
        let m = t.len();
        let smooth = &a[1] * t.iter().max().unwrap() == int(1);
        let teissier = (1..m).all(|i| &a[i] * &a[i] <= &a[i - 1] * &a[i + 1]);
        let top = a[m] == int(1) / t.iter().fold(int(1), |acc, x| acc * x);
        if !(smooth && teissier && top && a[0] == int(1)) {
            fail += 1;
        }
    }
    let i = MonomialIdeal::parse("x, y", Some(2)).map_err(e)?;
    let j = MonomialIdeal::parse("x, y^2", Some(2)).map_err(e)?;
    let lib = mixed_multiplicities(&i, &j).map_err(e)?.values;
    let (ei, ej) = (e2(i.gens()), e2(j.gens()));
    let eij = e2(&product_gens(i.gens(), j.gens()));
    let oracle = vec![ei.clone(), (&eij - &ei - &ej) / int(2), ej];
    let mixed_ok = lib == oracle && oracle[1] == int(1);
    Ok((
        fail == 0 && mixed_ok,
        format!("100 weights (m = 2, 3), {fail} failures; e(I;J) library {:?} oracle {:?}", fmt(&lib), fmt(&oracle)),
    ))
}

fn fmt(v: &[Rat]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn brute_beta(t: &[Rat], s: &[Rat], d: u32) -> Rat {
    let mut best = int(0);
    let mut stack = vec![vec![]];
    while let Some(a) = stack.pop() {
        let used: u32 = a.iter().sum();
        if a.len() == t.len() {
            if used > 0 {
                best = best.max(dot(t, &a) / dot(s, &a));
            }
            continue;
        }
        for k in 0..=d - used {
            let mut b = a.clone();
            b.push(k);
            stack.push(b);
        }
    }
    best
}

// 8. linking numbers by three routes
fn c8() -> Outcome {
    let mut r = rng(8);
    let mut exact_fail = 0;
    let mut worst = 0.0f64;
    for k in 0..70 {
        let (m, lo, den, n) = if k < 50 { (2, rat(1, 12), 12, 512) } else { (3, rat(1, 4), 4, 64) };
        let hi = if m == 2 { int(2) } else { int(1) };
        let t: Vec<Rat> = (0..m).map(|_| random_rat(&mut r, &lo, &hi, den)).collect();
        let s: Vec<Rat> = (0..m).map(|_| random_rat(&mut r, &lo, &hi, den)).collect();
        let closed = linking_number(&t, &s).map_err(e)?;
        if closed != linking_brute(&t, &s, 20).map_err(e)? || closed != brute_beta(&t, &s, 20) {
            exact_fail += 1;
        }
        let lim = linking_lembdiv(&t, &s, n).map_err(e)?;
        let rel = abs(&(&lim * &closed - int(1)));
        worst = worst.max(monoval::scalar::to_f64(&rel));
    }
    Ok((
        exact_fail == 0 && worst <= 0.02,
        format!("70 pairs, {exact_fail} closed/brute mismatches, worst limit error {:.3}%", worst * 100.0),
    ))
}

/// `a(v, n) in a(w, n')` checked on all monomials of the box that decides it.
fn inclusion_oracle(v: &[Rat], w: &[Rat], n: &Rat, np: &Rat) -> bool {
    let bound: Vec<i64> = v.iter().map(|x| (n / x).ceil().to_integer().try_into().unwrap()).collect();
    for a in 0..=bound[0] {
        for b in 0..=bound[1] {
            let al = [a as u32, b as u32];
            if dot(v, &al) >= *n && dot(w, &al) < *np {
                return false;
            }
        }
    }
    true
}

fn alpha_2d(t: &[Rat]) -> Vec<Rat> {
    vec![int(1), int(1) / t.iter().max().unwrap(), int(1) / (&t[0] * &t[1])]
}

fn beta(t: &[Rat], s: &[Rat]) -> Rat {
    t.iter().zip(s).map(|(a, b)| a / b).max().unwrap()
}

/// Lipschitz constant of `chi_x`, `chi_y` on the dual graph: the functions are
/// affine on edges with vertex values `ord / b`.
fn oracle_model_constant(tree: &BlowupTree) -> Result<Rat, String> {
    let (dual, _) = tree.dual_graph().map_err(e)?;
    let b = tree.multiplicities();
    let mut best = int(0);
    for g in [Polynomial::var(2, 0), Polynomial::var(2, 1)] {
        let val = |i: u32| -> Result<Rat, String> {
            let o = tree.ord_second_chart(i as usize - 1, &g).map_err(e)?.finite().unwrap();
            Ok(rat(o as i64, b[i as usize - 1] as i64))
        };
        for (i, j) in dual.edges() {
            let len = rat(1, b[i as usize - 1] as i64).max(rat(1, b[j as usize - 1] as i64));
            best = best.max(abs(&(val(i)? - val(j)?)) / len);
        }
    }
    Ok(best)
}

// 9. corollary experiments on toric chains
fn c9() -> Outcome {
    let mut incl_fail = 0;
    let mut ratio_fail = 0;
    let mut beta_fail = 0;
    let mut a_fail = 0;
    let mut pairs_total = 0;
    for (k, (_, tree)) in toric_trees().map_err(e)?.into_iter().enumerate() {
        let a = model_constant(&tree, Norm::L1).map_err(e)?;
        if a != oracle_model_constant(&tree)? {
            a_fail += 1;
        }
        let pairs = pair_samples(90 + k as u64, 50, &tree, &a).map_err(e)?;
        pairs_total += pairs.len();
        let alphas: Vec<(Vec<Rat>, Vec<Rat>)> = pairs.iter().map(|p| (alpha_2d(&p.v), alpha_2d(&p.w))).collect();
        let c: Vec<Rat> =
            (0..3).map(|i| alphas.iter().flat_map(|(x, y)| [&x[i], &y[i]]).max().unwrap().clone()).collect();
        for (p, (av, aw)) in pairs.iter().zip(&alphas) {
            for n in INCLUSION_LEVELS {
                let lib = ideal_inclusion(p, &a, n).map_err(e)?;
                let nn = int(n as i64);
                let np = &nn * (int(1) - &a * &p.dist);
                let oracle = inclusion_oracle(&p.v, &p.w, &nn, &np) && inclusion_oracle(&p.w, &p.v, &nn, &np);
                if !lib || !oracle {
                    incl_fail += 1;
                }
            }
            for i in 1..3 {
                if abs(&(&av[i] - &aw[i])) > int(i as i64) * &c[i] * &a * &p.dist {
                    ratio_fail += 1;
                }
            }
        }
        let quads = quad_samples(190 + k as u64, 50, &tree, &a).map_err(e)?;
        let cb = quads.iter().flat_map(|q| [beta(&q.v, &q.vp), beta(&q.w, &q.wp)]).max().unwrap();
        let lib = monoval::multiplicities::lipschitz_experiment_e(&quads, &a).map_err(e)?;
        for (q, row) in quads.iter().zip(&lib.rows) {
            let (bv, bw) = (beta(&q.v, &q.vp), beta(&q.w, &q.wp));
            let bound = &cb * (int(1) / ((int(1) - &a * &q.d) * (int(1) - &a * &q.dp)) - int(1));
            let sub = bv <= beta(&q.v, &q.w) * beta(&q.w, &q.vp) && bw <= beta(&q.w, &q.v) * beta(&q.v, &q.wp);
            let recip = &bv * beta(&q.vp, &q.v) >= int(1);
            if abs(&(&bv - &bw)) > bound || !sub || !recip || row.beta_vvp != bv || row.bound != bound || !lib.pass() {
                beta_fail += 1;
            }
        }
    }
    let ok = incl_fail == 0 && ratio_fail == 0 && beta_fail == 0 && a_fail == 0;
    Ok((
        ok,
        format!(
            "{pairs_total} pairs at n = 8, 16, 32: {incl_fail} inclusion, {ratio_fail} alpha-ratio, {beta_fail} beta violations, {a_fail} constant mismatches"
        ),
    ))
}

/// `max { r : alpha in r Nw(I) }` by testing `r = p / q` with `q <= 6` against the hull.
fn lambda_oracle(np: &monoval::polyhedron::NewtonPolyhedron, a: &[u32]) -> Rat {
    let deg: u32 = a.iter().sum();
    let mut best = int(0);
    for q in 1..=6i64 {
        for p in 1..=(6 * deg as i64) {
            let r = rat(p, q);
            if r <= best {
                continue;
            }
            let x: Vec<Rat> = a.iter().map(|&k| int(k as i64) / &r).collect();
            if np.contains(&x) {
                best = r;
            }
        }
    }
    best
}

// 10. asymptotic order on reference ideals
fn c10() -> Outcome {
    let mut r = rng(10);
    let corpus: Vec<Polynomial> = (0..500).map(|_| monoval::corpus::random_poly_m0(&mut r, 2, 8, 12)).collect();
    let mut detail = Vec::new();
    let mut ok = true;
    for text in REFERENCE_IDEALS {
        let ideal = MonomialIdeal::parse(text, Some(2)).map_err(e)?;
        let np = ideal.newton_polyhedron().map_err(e)?;
        let scan = t107_scan(&ideal, T107_HORIZON).map_err(e)?;
        let mut hat_fail = 0;
        let mut max_gap = int(0);
        let mut rows = Vec::new();
        for f in &corpus {
            let (ord, hat) = t106_gap(&ideal, f).map_err(e)?;
            let oracle_hat = f.support().map(|a| lambda_oracle(&np, a)).min().unwrap();
            let oracle_ord = f
                .support()
                .map(|a| (0..).take_while(|&k| ideal.power(k).contains(a)).last().unwrap())
                .min()
                .unwrap();
            if hat != oracle_hat || ord != oracle_ord {
                hat_fail += 1;
            }
            max_gap = max_gap.max(&hat - int(ord as i64));
            rows.push((int(ord as i64), hat));
        }
        let n = single_n(scan.n_min, &max_gap);
        // closure(I^k) in I^(k - n) straight from the hull, k <= 20
        let mut closure_fail = 0;
        for k in 1..=T107_HORIZON {
            let lower = ideal.power(k.saturating_sub(n));
            let box_side = 3 * k;
            for a0 in 0..=box_side {
                for a1 in 0..=box_side {
                    let a = [a0, a1];
                    if lower.contains(&a) {
                        continue;
                    }
                    let x: Vec<Rat> = a.iter().map(|&c| rat(c as i64, k as i64)).collect();
                    if np.contains(&x) {
                        closure_fail += 1;
                    }
                }
            }
        }
        let sandwich = rows.iter().all(|(o, h)| o <= h && *h <= o + int(n as i64));
        let good = hat_fail == 0 && closure_fail == 0 && sandwich && n <= 3;
        ok &= good;
        detail.push(format!("({text}) N = {n}"));
        if !good {
            detail.push(format!("[{hat_fail} order mismatches, {closure_fail} closure failures, sandwich {sandwich}]"));
        }
    }
    Ok((ok, format!("500 polynomials per ideal; {}", detail.join("; "))))
}

/// Lipschitz constant on a segment face: a concave function on `[0, 1]` is
/// steepest at the ends, where the one-sided slopes come from the tied forms.
fn segment_lipschitz(p: &Polynomial, u: &[Vec<i64>; 2], b: [i64; 2]) -> Rat {
    let val = |a: &[u32], k: usize| -> Rat { rat(u[k][0] * a[0] as i64 + u[k][1] * a[1] as i64, b[k]) };
    // g(s) = (1 - s) val(a, 0) + s val(a, 1)
    let at = |s: usize| -> (Rat, Vec<Rat>) {
        let vals: Vec<(Rat, Rat)> = p.support().map(|a| (val(a, s), val(a, 1) - val(a, 0))).collect();
        let m = vals.iter().map(|x| x.0.clone()).min().unwrap();
        (m.clone(), vals.into_iter().filter(|x| x.0 == m).map(|x| x.1).collect())
    };
    let right = at(0).1.into_iter().min().unwrap();
    let left = at(1).1.into_iter().max().unwrap();
    let len = rat(1, b[0]).max(rat(1, b[1]));
    abs(&right).max(abs(&left)) / len
}

// 11. polynomials at infinity on two toric compactifications
fn c11() -> Outcome {
    let corpus = degree_corpus(11, 200);
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, m) in toric_models() {
        let rays = &m.fan.rays;
        let bs: Vec<i64> = rays.iter().map(|u| -u.iter().copied().chain([0]).min().unwrap()).collect();
        let mut min_fail = 0;
        let mut lip_fail = 0;
        let mut fitted = int(0);
        for p in &corpus {
            let d = int(p.total_degree().unwrap() as i64);
            let rep = monoval::surface::at_infinity(&m, p, Norm::LInf).map_err(e)?;
            let oracle_min = m
                .chain
                .iter()
                .map(|&j| {
                    let u = &rays[j];
                    p.support().map(|a| rat(u[0] * a[0] as i64 + u[1] * a[1] as i64, bs[j])).min().unwrap()
                })
                .min()
                .unwrap();
            let oracle_lip = m
                .chain
                .windows(2)
                .map(|w| segment_lipschitz(p, &[rays[w[0]].clone(), rays[w[1]].clone()], [bs[w[0]], bs[w[1]]]))
                .max()
                .unwrap();
            if oracle_min != -d.clone() || rep.min_chi != oracle_min {
                min_fail += 1;
            }
            if rep.lipschitz != oracle_lip {
                lip_fail += 1;
            }
            fitted = fitted.max(oracle_lip / &d);
        }
        let apriori = monoval::surface::at_infinity_apriori_b(&m);
        let good = min_fail == 0 && lip_fail == 0 && fitted <= apriori;
        ok &= good;
        detail.push(format!("{name}: B = {fitted} (a priori {apriori}), {min_fail} min failures, {lip_fail} Lipschitz mismatches"));
    }
    Ok((ok, format!("200 polynomials up to degree 15; {}", detail.join("; "))))
}

fn monoval_bin(args: &[&str], threads: &str) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_monoval"))
        .args(args)
        .env("MONOVAL_THREADS", threads)
        .output()
        .map_err(e)?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

// 12. byte-identical reports and the exit code contract
fn c12() -> Outcome {
    let mut problems = Vec::new();
    let suites = ["thmA", "thmAprime", "izumi", "L101", "corC", "corD", "corE", "t106", "teissier"];
    for s in suites {
        let args = ["report", s, "--seed", "7", "--samples", "20"];
        let (c1, o1) = monoval_bin(&args, "1")?;
        let (c2, o2) = monoval_bin(&args, "4")?;
        if o1 != o2 || c1 != c2 || o1.is_empty() || !(c1 == 0 || c1 == 1) {
            problems.push(format!("{s} not reproducible"));
        }
    }
    let dir = std::env::temp_dir().join(format!("monoval-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e)?;
    let a2 = dir.join("a2.json");
    std::fs::write(&a2, r#"{"vertices":[{"id":1,"b":1},{"id":2,"b":1}],"faces":[[1],[2],[1,2]]}"#).map_err(e)?;
    let a2s = a2.to_str().unwrap();
    let expect = |args: &[&str], code: i32, stdout: Option<&str>, problems: &mut Vec<String>| -> Result<(), String> {
        let (c, o) = monoval_bin(args, "2")?;
        if c != code || stdout.is_some_and(|s| s.as_bytes() != o.as_slice()) {
            problems.push(format!("{args:?} gave exit {c}"));
        }
        Ok(())
    };
    expect(&["eval", "--model", a2s, "--poly", "x^2+x*y^3", "--point", "1/2,1/2"], 0, Some("1\n"), &mut problems)?;
    expect(&["eval", "--model", a2s, "--poly", "x^2+x*y^3", "--point", "1/2,x"], 2, None, &mut problems)?;
    expect(&["report", "teissier", "--samples", "10"], 0, None, &mut problems)?;
    expect(&["report", "nosuch"], 2, None, &mut problems)?;
    expect(&["volume"], 2, None, &mut problems)?;
    // a suite whose assertion fails on this corpus (see thmAprime on chain2)
    expect(&["report", "thmAprime", "--seed", "2", "--samples", "200"], 1, None, &mut problems)?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok((problems.is_empty(), if problems.is_empty() { "9 suites byte-identical across runs and thread counts; exit codes 0/1/2".into() } else { problems.join("; ") }))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("chi_f concave and consistent", c1),
        ("fitted constant A' stable across halves", c2),
        ("vertex bound and Izumi inequality", c3),
        ("subdivision identity on monomial models", c4),
        ("special subdivision projective, simplicialization keeps the star", c5),
        ("volume formula", c6),
        ("alpha vector and mixed multiplicity", c7),
        ("linking numbers", c8),
        ("Lipschitz experiments for alpha and beta", c9),
        ("asymptotic order on reference ideals", c10),
        ("polynomials at infinity", c11),
        ("CLI determinism and exit codes", c12),
    ];
    let mut passed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = match f() {
            Ok(x) => x,
            Err(msg) => (false, format!("error: {msg}")),
        };
        passed += ok as usize;
        println!("{} [{:>2}] {name}: {detail}", if ok { "PASS" } else { "FAIL" }, k + 1);
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if passed < criteria.len() && std::env::var("MONOVAL_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
