use std::fmt::Display;
use std::sync::Arc;

use attributes::{compute_attributes, i12, i6, is_skew_hermitian, Attributes, ModuleName};
use clifford_core::{glue, parse_elem, CliffordAlg};
use ks_decomposition::{is_block_diagonal, span_is_primitive, Elem, KsDecomposition};
use lattice::{named_lattice, signature, IntLattice, Named};
use num_traits::{One, Signed, Zero};
use period_map::{
    in_unit_disk, matches_ab, natural_branch, rank_check, run_period, Branch, PeriodPoint, PeriodRun,
};
use quaternion::RatQuat;
use scalar_tower::{parse_gauss, parse_rational, Mat, Rational};
use serde_json::{json, Value};

use crate::{BranchChoice, Check, CliError, Command, JobSpec};

type StageResult = Result<(Value, Vec<Check>), String>;

const T_NAMES: [(&str, usize); 8] =
    [("f1", 0), ("f2", 1), ("f3", 2), ("f4", 3), ("h1", 4), ("h2", 5), ("h3", 6), ("h4", 7)];

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass }
}

fn err(e: impl Display) -> String {
    e.to_string()
}

fn mat_text<T: Display>(m: &Mat<T>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

/// "a + b*i + c*j + d*k" with zero terms dropped.
pub fn quat_text(q: &RatQuat) -> String {
    let mut out = String::new();
    for (c, unit) in q.coeffs().iter().zip(["", "i", "j", "k"]) {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let a = c.abs();
        let body = match (unit, a.is_one()) {
            ("", _) => a.to_string(),
            (_, true) => unit.to_string(),
            _ => format!("{a}*{unit}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out += if neg { " - " } else { " + " };
            out += &body;
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn quat_mat_text(m: &Mat<RatQuat>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(quat_text).collect()).collect()
}

fn opt_text<T: Display>(x: &Option<T>) -> Value {
    x.as_ref().map_or(Value::Null, |v| Value::String(v.to_string()))
}

/// Lazily built pipeline state shared by the stages of one job.
pub struct Context {
    job: JobSpec,
    lattice: IntLattice,
    ks: Option<Arc<KsDecomposition>>,
    attrs: Option<Arc<Attributes>>,
}

impl Context {
    pub fn new(job: &JobSpec) -> Result<Self, CliError> {
        let lattice = job.lattice.build().map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Context { job: job.clone(), lattice, ks: None, attrs: None })
    }

    pub fn run_stage(&mut self, c: Command) -> StageResult {
        match c {
            Command::CliffordInfo => self.clifford_info(),
            Command::Glue => self.glue(),
            Command::Decompose => self.decompose(),
            Command::Rep => self.rep(),
            Command::Attributes => self.attributes(),
            Command::Period => self.period(),
            Command::Rank18Scan => self.rank18_scan(),
            Command::RankCheck => self.rank_check(),
        }
    }

    fn require_t(&self) -> Result<(), String> {
        let t = named_lattice(&Named::OrthogonalSum(vec![Named::U, Named::Un(2), Named::D4Minus]));
        if self.lattice.gram != t.gram {
            return Err("this stage is implemented for T = U + U(2) + D4(-1) only".into());
        }
        Ok(())
    }

    fn ks(&mut self) -> Result<Arc<KsDecomposition>, String> {
        self.require_t()?;
        if self.ks.is_none() {
            self.ks = Some(Arc::new(KsDecomposition::compute().map_err(err)?));
        }
        Ok(self.ks.clone().expect("set above"))
    }

    fn attrs(&mut self) -> Result<Arc<Attributes>, String> {
        let ks = self.ks()?;
        if self.attrs.is_none() {
            let alpha = self.parse_t_elem(&ks, &self.job.alpha)?;
            self.attrs = Some(Arc::new(compute_attributes(&ks, &alpha).map_err(err)?));
        }
        Ok(self.attrs.clone().expect("set above"))
    }

    fn parse_t_elem(&self, ks: &KsDecomposition, text: &str) -> Result<Elem, String> {
        parse_elem(&ks.t, text, &T_NAMES, &|_| None).map_err(err)
    }

    fn omega(&self) -> Result<PeriodPoint, String> {
        match &self.job.omega {
            Some(p) => p.to_point().map_err(err),
            None => Ok(PeriodPoint::example_point()),
        }
    }

    fn clifford_info(&mut self) -> StageResult {
        let l = &self.lattice;
        let alg = CliffordAlg::new(l.gram.clone()).map_err(err)?;
        let n = alg.n();
        let (p, m, z) = signature(&l.gram);
        let mut relations = true;
        for i in 0..n {
            for j in i..n {
                let mut v = vec![Rational::zero(); n];
                v[i] += Rational::one();
                v[j] += Rational::one();
                let x = alg.vector(&v);
                relations &= alg.mul(&x, &x).map_err(err)? == alg.scalar(alg.q(&v));
            }
        }
        let data = json!({
            "summands": self.job.lattice.summands().map(|v| v.iter().map(|s| s.label()).collect::<Vec<_>>()),
            "rank": n,
            "gram": mat_text(&l.gram),
            "signature": [p, m, z],
            "dim": alg.dim(),
            "even_dim": alg.even_dim(),
        });
        let checks = vec![
            check("dim_law", alg.dim() == 1 << n && alg.even_dim() == 1 << n.saturating_sub(1)),
            check("even_odd_split", alg.even_masks().len() == alg.even_dim() && alg.odd_masks().len() == alg.dim() - alg.even_dim()),
            check("clifford_relations", relations),
        ];
        Ok((data, checks))
    }

    fn glue(&mut self) -> StageResult {
        let parts = self.job.lattice.summands().ok_or("glue needs a lattice given by summands")?;
        let algs = parts
            .iter()
            .map(|p| CliffordAlg::new(named_lattice(p).gram).map_err(err))
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = CliffordAlg::new(algs[0].form().clone()).map_err(err)?;
        let mut graded = true;
        let mut dims = true;
        for b in &algs[1..] {
            let g = glue(&acc, b);
            dims &= g.alg.dim() == acc.dim() * b.dim();
            if acc.dim() * b.dim() <= 1 << 16 {
                for sa in 0u32..acc.dim() as u32 {
                    for sb in 0u32..b.dim() as u32 {
                        let x = g.embed_left(&acc.mono(sa));
                        let y = g.embed_right(&b.mono(sb));
                        let sign = if (sa.count_ones() * sb.count_ones()) % 2 == 1 { -1 } else { 1 };
                        let lhs = g.alg.mul(&x, &y).map_err(err)?;
                        let rhs = g.alg.mul(&y, &x).map_err(err)?.scale(&Rational::from_integer(sign.into()));
                        graded &= lhs == rhs;
                    }
                }
            }
            acc = g.alg;
        }
        let mut offset = 0;
        let factors: Vec<Value> = parts
            .iter()
            .zip(&algs)
            .map(|(p, a)| {
                let v = json!({ "label": p.label(), "rank": a.n(), "dim": a.dim(), "first_generator": offset + 1 });
                offset += a.n();
                v
            })
            .collect();
        let data = json!({ "factors": factors, "rank": acc.n(), "dim": acc.dim(), "even_dim": acc.even_dim() });
        let checks = vec![
            check("form_is_orthogonal_sum", acc.form() == &self.lattice.gram),
            check("dim_multiplicative", dims),
            check("graded_tensor_rule", graded),
        ];
        Ok((data, checks))
    }

    fn decompose(&mut self) -> StageResult {
        let ks = self.ks()?;
        let t = &ks.t;
        let r = |n: i64| Rational::from_integer(n.into());
        let pow_ok = |alg: &CliffordAlg<Rational>, x: &Elem, s: i64| alg.mul(x, x).map(|y| y == x.scale(&r(s))).unwrap_or(false);
        let x_sq = ks.x.iter().all(|x| x.scale == 8 && pow_ok(&ks.cl_uu2, &x.elem, 8));
        let y_sq = ks.y.iter().all(|y| y.scale == 4 && pow_ok(&ks.cl_d4, &y.elem, 4));
        let x_sum = ks.x.iter().fold(ks.cl_uu2.zero(), |a, x| a + x.elem.clone()) == ks.cl_uu2.scalar(r(8));
        let eps_sq = ks.eps.iter().all(|e| e.scale == 32 && pow_ok(t, &e.elem, 32));
        let mut eps_orth = true;
        for (i, e) in ks.eps.iter().enumerate() {
            for (j, f) in ks.eps.iter().enumerate() {
                if i != j {
                    eps_orth &= t.mul(&e.elem, &f.elem).map_err(err)?.is_zero();
                }
            }
        }
        let eps_sum = ks.eps.iter().fold(t.zero(), |a, e| a + e.elem.clone()) == t.scalar(r(32));
        let mut split_units = true;
        for (i, e) in ks.eps.iter().enumerate() {
            let (a, b) = ks.split.split_eval(&e.elem).map_err(err)?;
            let mut unit = Mat::<RatQuat>::zeros(4, 4);
            unit[(i % 4, i % 4)] = RatQuat::from(r(32));
            let zero = Mat::<RatQuat>::zeros(4, 4);
            split_units &= if i < 4 { (a, b) == (unit, zero) } else { (a, b) == (zero, unit) };
        }
        let parity = |v: &Vec<Elem>| (v.iter().filter(|e| e.is_even()).count(), v.iter().filter(|e| e.is_odd()).count());
        let l_ok = ks.l.iter().all(|l| parity(l) == (2, 2));
        let k_ok = ks.k.iter().all(|k| parity(k) == (4, 4));
        let lam_ok = ks.lambdas.iter().all(|l| l.basis.len() == 16 && l.rank() == 16);
        let lam_sat = ks.lambdas.iter().all(|l| l.sublattice().is_saturated());
        let phi = ks.build_phi_re(&ks.lambdas[0]).map_err(err)?;
        let n1_id = phi.n[0] == ks_decomposition::int_identity(16);
        let blocks = phi.n.iter().all(|m| is_block_diagonal(m, 4));
        let primitive = span_is_primitive(&phi.n);

        let render = |v: &[Elem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        let data = json!({
            "x": ks.x.iter().map(|p| json!({ "scale": p.scale, "elem": p.elem.to_string() })).collect::<Vec<_>>(),
            "h": ks.h.to_string(),
            "y": ks.y.iter().map(|p| json!({ "scale": p.scale, "elem": p.elem.to_string() })).collect::<Vec<_>>(),
            "eps": ks.eps.iter().zip(ks_decomposition::EPS_PAIRS).map(|(p, (a, b))| json!({
                "x": a + 1, "y": b + 1, "scale": p.scale, "elem": p.elem.to_string(),
            })).collect::<Vec<_>>(),
            "l": ks.l.iter().map(|v| json!({ "even": parity(v).0, "odd": parity(v).1, "generators": render(v) })).collect::<Vec<_>>(),
            "k": ks.k.iter().map(|v| json!({ "even": parity(v).0, "odd": parity(v).1, "generators": render(v) })).collect::<Vec<_>>(),
            "lambda": ks.lambdas.iter().map(|l| json!({
                "index": l.index + 1,
                "rank": l.rank(),
                "labels": l.labels.iter().map(|(s, w)| [s + 1, w + 1]).collect::<Vec<_>>(),
                "basis": render(&l.basis),
            })).collect::<Vec<_>>(),
            "h_tilde": render(&phi.h_tilde),
            "n": phi.n.iter().map(mat_text).collect::<Vec<_>>(),
        });
        let checks = vec![
            check("x_squares", x_sq),
            check("x_sum", x_sum),
            check("y_squares", y_sq),
            check("eps_squares", eps_sq),
            check("eps_orthogonal", eps_orth),
            check("eps_sum", eps_sum),
            check("eps_split_units", split_units),
            check("l_parities", l_ok),
            check("k_parities", k_ok),
            check("lambda_ranks", lam_ok),
            check("lambda_saturated", lam_sat),
            check("n1_identity", n1_id),
            check("n_block_diagonal", blocks),
            check("n_span_primitive", primitive),
        ];
        Ok((data, checks))
    }

    fn rep(&mut self) -> StageResult {
        let ks = self.ks()?;
        if self.job.elements.is_empty() {
            return Err("rep needs at least one element".into());
        }
        let mut out = Vec::new();
        let mut checks = Vec::new();
        for (i, text) in self.job.elements.iter().enumerate() {
            let x = self.parse_t_elem(&ks, text)?;
            let m = ks.phi.eval(&x).map_err(err)?;
            let mut v = json!({
                "input": text,
                "elem": x.to_string(),
                "parity": x.parity(),
                "matrix": quat_mat_text(&m),
            });
            if let Some(p) = x.parity() {
                checks.push(check(format!("{}.graded", i + 1), ks.phi.is_graded(&m, p == 1)));
            }
            if x.is_even() {
                let (a, b) = ks.split.split_eval(&x).map_err(err)?;
                v["split"] = json!([quat_mat_text(&a), quat_mat_text(&b)]);
            }
            out.push(v);
        }
        Ok((Value::Array(out), checks))
    }

    fn attributes(&mut self) -> StageResult {
        let at = self.attrs()?;
        let blocks: Vec<Value> = at
            .modules
            .iter()
            .zip(&at.names)
            .zip(&at.multipliers)
            .map(|((m, name), mult)| {
                json!({
                    "block": m.block + 1,
                    "divisors": m.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "basis": m.module.basis.iter().map(quat_text).collect::<Vec<_>>(),
                    "minimal_pairs": m.module.minimal_pair_count(),
                    "name": name.label(),
                    "multiplier": quat_text(mult),
                })
            })
            .collect();
        let mut pairs: Vec<usize> = at.modules.iter().map(|m| m.module.minimal_pair_count()).collect();
        pairs.sort();
        let count = |n: ModuleName| at.names.iter().filter(|&&x| x == n).count();
        let data = json!({
            "alpha": self.job.alpha,
            "r": at.r.iter().map(quat_text).collect::<Vec<_>>(),
            "blocks": blocks,
            "m_e": mat_text(&at.m_e),
            "t": quat_mat_text(&at.t),
            "order": at.order.iter().map(|o| o + 1).collect::<Vec<_>>(),
            "t_canonical": quat_mat_text(&at.t_canonical),
        });
        let mut checks = vec![
            check("minimal_pairs", pairs == [6, 6, 12, 12]),
            check("two_i6_two_i12", count(ModuleName::I6) == 2 && count(ModuleName::I12) == 2),
            check("reference_modules", i6().minimal_pair_count() == 6 && i12().minimal_pair_count() == 12),
            check("t_skew_hermitian", is_skew_hermitian(&at.t)),
            check("m_e_alternating", at.m_e.transpose() == at.m_e.neg()),
        ];
        if let Some(rows) = &self.job.expect.t {
            let expected = rows
                .iter()
                .map(|r| r.iter().map(|s| parse_rational(s).map(RatQuat::from).map_err(err)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            checks.push(check("expected_t", Mat::from_rows(expected) == at.t_canonical));
        }
        Ok((data, checks))
    }

    fn branches(&self) -> Vec<Option<Branch>> {
        match self.job.branch {
            BranchChoice::Natural => vec![None],
            BranchChoice::Omega => vec![Some(Branch::Omega)],
            BranchChoice::OmegaBar => vec![Some(Branch::OmegaBar)],
            BranchChoice::Both => vec![Some(Branch::Omega), Some(Branch::OmegaBar)],
        }
    }

    fn period(&mut self) -> StageResult {
        let ks = self.ks()?;
        let at = self.attrs()?;
        let point = self.omega()?;
        let mut runs = Vec::new();
        for b in self.branches() {
            runs.push(run_period(&ks, &at, &point, b).map_err(err)?);
        }
        let mut checks = Vec::new();
        let mut out = Vec::new();
        for run in &runs {
            let tag = run.branch.label();
            checks.extend(run_checks(tag, run));
            checks.push(check(format!("{tag}.polarization_definite"), run.polarization_sign.is_some()));
            out.push(run_json(run));
        }
        let expect = &self.job.expect;
        if let (Some(ea), Some(eb)) = (&expect.a, &expect.b) {
            let ea = parse_gauss(ea).map_err(err)?;
            let eb = parse_gauss(eb).map_err(err)?;
            let mut all = Vec::new();
            for b in [Branch::Omega, Branch::OmegaBar] {
                match runs.iter().find(|r| r.branch == b) {
                    Some(r) => all.push((r.result.a.clone(), r.result.b.clone())),
                    None => {
                        let r = run_period(&ks, &at, &point, Some(b)).map_err(err)?;
                        all.push((r.result.a, r.result.b));
                    }
                }
            }
            let hit = all.iter().any(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => matches_ab(a, b, &ea, &eb),
                _ => false,
            });
            checks.push(check("expected_ab", hit));
        }
        let natural = natural_branch(runs[0].polarization_sign);
        let data = json!({
            "point": crate::PointSpec::from_point(&point),
            "natural_branch": natural.label(),
            "runs": out,
        });
        Ok((data, checks))
    }

    fn rank18_scan(&mut self) -> StageResult {
        let ks = self.ks()?;
        let at = self.attrs()?;
        if self.job.points.is_empty() {
            return Err("rank18-scan needs at least one point".into());
        }
        let branch = self.branches()[0];
        let mut out = Vec::new();
        let mut checks = Vec::new();
        for spec in &self.job.points {
            let p = spec.to_point().map_err(err)?;
            let inside = p.in_t_prime();
            checks.push(check(format!("{}.inside_t_prime", p.label), inside));
            if !inside {
                continue;
            }
            let run = run_period(&ks, &at, &p, branch).map_err(err)?;
            checks.extend(run_checks(&p.label, &run));
            out.push(run_json(&run));
        }
        Ok((Value::Array(out), checks))
    }

    fn rank_check(&mut self) -> StageResult {
        let ks = self.ks()?;
        let p = self.omega()?;
        let rep = rank_check(&ks, &p).map_err(err)?;
        let data = json!({
            "point": p.label,
            "z_ranks": rep.z_ranks,
            "complex_ranks": rep.complex_ranks,
            "even_total": rep.even_total,
        });
        let checks = vec![
            check("complex_ranks_one", rep.complex_ranks.iter().all(|&(a, b)| a == 1 && b == 1)),
            check("even_total", rep.even_total == 8),
        ];
        Ok((data, checks))
    }
}

fn run_checks(tag: &str, run: &PeriodRun) -> Vec<Check> {
    let r = &run.result;
    let disk = |x: &Option<scalar_tower::GaussQuad>| x.as_ref().is_some_and(in_unit_disk);
    vec![
        check(format!("{tag}.spin"), run.spin),
        check(format!("{tag}.j_isometry"), run.j_isometry),
        check(format!("{tag}.antisymmetric"), r.antisymmetric),
        check(format!("{tag}.contraction"), r.positive),
        check(format!("{tag}.sparse_form"), r.a.is_some() && r.b.is_some()),
        check(format!("{tag}.a_in_disk"), disk(&r.a)),
        check(format!("{tag}.b_in_disk"), disk(&r.b)),
    ]
}

fn run_json(run: &PeriodRun) -> Value {
    let r = &run.result;
    json!({
        "label": run.point.label,
        "branch": run.branch.label(),
        "swaps": r.swaps,
        "polarization_sign": run.polarization_sign,
        "z": mat_text(&r.z),
        "a": opt_text(&r.a),
        "b": opt_text(&r.b),
        "siegel_a": opt_text(&run.f_a),
        "siegel_b": opt_text(&run.f_b),
    })
}
