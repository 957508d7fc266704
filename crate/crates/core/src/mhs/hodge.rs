use super::graded::Graded;
use super::lattice::NilpotentEndo;
use super::weight::{check_graded_isomorphisms, lowers_weight_by_two, weight_filtration, WeightFiltration};
use super::MhsError;
use crate::exact::{ExactMatrix, GaussianRational, Subspace};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Decreasing filtration `V = F^0 ⊇ F^1 ⊇ … ⊇ F^n`; `F^p = 0` for `p > n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeFiltration {
    steps: Vec<Subspace>,
}

impl HodgeFiltration {
    pub fn new(steps: Vec<Subspace>) -> Result<Self, MhsError> {
        let first = steps.first().ok_or(MhsError::EmptyFiltration)?;
        let dim = first.ambient_dim();
        if !first.is_full() {
            return Err(MhsError::HodgeNotExhaustive);
        }
        if steps.iter().any(|s| s.ambient_dim() != dim) {
            return Err(MhsError::Shape("Hodge filtration steps live in different spaces".into()));
        }
        for (p, w) in steps.windows(2).enumerate() {
            if !w[0].contains(&w[1]) {
                return Err(MhsError::HodgeNotDecreasing { index: p + 1 });
            }
        }
        Ok(Self { steps })
    }

    pub fn ambient_dim(&self) -> usize {
        self.steps[0].ambient_dim()
    }

    /// Largest index carried (the weight `n`).
    pub fn top(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn step(&self, p: i64) -> Subspace {
        if p <= 0 {
            Subspace::full(self.ambient_dim())
        } else if p as usize >= self.steps.len() {
            Subspace::zero(self.ambient_dim())
        } else {
            self.steps[p as usize].clone()
        }
    }

    pub fn map(&self, f: impl Fn(&Subspace) -> Subspace) -> Self {
        Self { steps: self.steps.iter().map(f).collect() }
    }
}

/// `(V, n, Q, N, W, F)`.
#[derive(Clone, Debug)]
pub struct LimitingMixedHodge {
    endo: NilpotentEndo,
    w: WeightFiltration,
    f: HodgeFiltration,
    candidate_w: bool,
}

impl LimitingMixedHodge {
    /// `w = None` builds `W(N)`; a supplied candidate is kept and validated later.
    pub fn new(endo: NilpotentEndo, f: HodgeFiltration, w: Option<WeightFiltration>) -> Result<Self, MhsError> {
        if f.ambient_dim() != endo.dim() {
            return Err(MhsError::Shape("F lives in a space of the wrong dimension".into()));
        }
        if f.top() != endo.weight() as usize {
            return Err(MhsError::Shape(format!(
                "F must list F^0..F^{} for weight {}",
                endo.weight(),
                endo.weight()
            )));
        }
        let candidate_w = w.is_some();
        let w = match w {
            Some(w) if w.ambient_dim() != endo.dim() => {
                return Err(MhsError::Shape("W lives in a space of the wrong dimension".into()))
            }
            Some(w) => w,
            None => weight_filtration(&endo),
        };
        Ok(Self { endo, w, f, candidate_w })
    }

    pub fn endo(&self) -> &NilpotentEndo {
        &self.endo
    }

    pub fn w(&self) -> &WeightFiltration {
        &self.w
    }

    pub fn f(&self) -> &HodgeFiltration {
        &self.f
    }

    pub fn weight(&self) -> i64 {
        self.endo.weight() as i64
    }

    pub fn dim(&self) -> usize {
        self.endo.dim()
    }

    /// `p_g = dim F^n`.
    pub fn pg(&self) -> usize {
        self.f.step(self.weight()).dim()
    }

    /// Same data with `F` replaced.
    pub fn with_f(&self, f: HodgeFiltration) -> Result<Self, MhsError> {
        Self::new(self.endo.clone(), f, self.candidate_w.then(|| self.w.clone()))
    }

    fn graded(&self) -> Graded {
        Graded::new(&self.w)
    }

    /// Range of weights whose graded piece can be nonzero.
    fn weight_range(&self) -> (i64, i64) {
        self.w.range()
    }
}

/// Outcome of a single check; `witness` is a vector of `V` exhibiting a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<GaussianRational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Axiom {
    fn ok(name: impl Into<String>) -> Self {
        Self { name: name.into(), pass: true, witness: None, detail: None }
    }

    fn fail(name: impl Into<String>, witness: Option<Vec<GaussianRational>>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass: false, witness, detail: Some(detail.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub axioms: Vec<Axiom>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.name == name)
    }
}

/// Purity of `Gr_k` with a failing vector when there is one.
fn purity(lmhs: &LimitingMixedHodge, g: &Graded, k: i64) -> Result<(), Option<Vec<GaussianRational>>> {
    let d = g.dim(k);
    if d == 0 {
        return Ok(());
    }
    for p in 0..=k + 1 {
        let fp = g.class_of(&lmhs.f.step(p), &lmhs.w, k);
        let fq = g.class_of(&lmhs.f.step(k - p + 1), &lmhs.w, k).conj();
        let meet = fp.intersection(&fq);
        if !meet.is_zero() {
            return Err(Some(g.lift_vector(k, &meet.basis().column(0))));
        }
        let sum = fp.sum(&fq);
        if !sum.is_full() {
            let missing = Subspace::full(d).complement_of(&sum);
            return Err(missing.first().map(|v| g.lift_vector(k, v)));
        }
    }
    Ok(())
}

/// Whether `F` induces a pure Hodge structure of weight `k` on `Gr_k`:
/// `F^p ⊕ conj(F^{k-p+1}) = Gr_k` for every `p`.
pub fn induced_pure_check(lmhs: &LimitingMixedHodge, k: i64) -> bool {
    lmhs.w.is_rational() && purity(lmhs, &lmhs.graded(), k).is_ok()
}

fn n_type(lmhs: &LimitingMixedHodge) -> Result<(), (String, Vec<GaussianRational>)> {
    let n = lmhs.endo.n();
    for p in 1..=lmhs.weight() {
        let fp = lmhs.f.step(p);
        let target = lmhs.f.step(p - 1);
        for v in fp.basis_vectors() {
            if !target.contains_vector(&n.mul_vec(&v)) {
                return Err((format!("N F^{p} not inside F^{}", p - 1), v));
            }
        }
    }
    let (low, high) = lmhs.w.range();
    for k in low..=high {
        let target = lmhs.w.step(k - 2);
        for v in lmhs.w.step(k).basis_vectors() {
            if !target.contains_vector(&n.mul_vec(&v)) {
                return Err((format!("N W_{k} not inside W_{}", k - 2), v));
            }
        }
    }
    Ok(())
}

/// `N F^p ⊆ F^{p-1}` and `N W_k ⊆ W_{k-2}`.
pub fn check_n_type(lmhs: &LimitingMixedHodge) -> bool {
    n_type(lmhs).is_ok()
}

/// Result of checking one primitive piece `P_{n+ℓ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationOutcome {
    pub ell: i64,
    pub primitive_dim: usize,
    /// `Q(u, N^ℓ v) = 0` for `u ∈ F^p P`, `v ∈ F^{n+ℓ-p+1} P`.
    pub first_relation: bool,
    /// `i^{p-q} Q(u, N^ℓ ū) > 0` on every nonzero `(p, q)` class.
    pub positivity: bool,
    pub witness: Option<Vec<GaussianRational>>,
    pub detail: Option<String>,
}

impl PolarizationOutcome {
    pub fn pass(&self) -> bool {
        self.first_relation && self.positivity
    }
}

/// Positive definiteness of a Hermitian matrix by exact symmetric elimination.
/// On failure returns coefficients `α` with `αᵀ H conj(α) ≤ 0` (or `None`
/// when `H` is not Hermitian).
pub fn hermitian_positive(h: &ExactMatrix) -> Result<(), Option<Vec<GaussianRational>>> {
    if h.conj_transpose() != *h {
        return Err(None);
    }
    let s = h.rows();
    let mut m = h.clone();
    let mut t = ExactMatrix::identity(s);
    for k in 0..s {
        let d = m[(k, k)].clone();
        if !d.re.is_positive() {
            return Err(Some(t.row(k).to_vec()));
        }
        let inv = d.inv().expect("positive pivot");
        for i in k + 1..s {
            let f = &m[(i, k)] * &inv;
            if f.is_zero() {
                continue;
            }
            let fc = f.conj();
            for j in 0..s {
                let r = &f * &m[(k, j)];
                m[(i, j)] -= &r;
                let tr = &f * &t[(k, j)];
                t[(i, j)] -= &tr;
            }
            for j in 0..s {
                let c = &fc * &m[(j, k)];
                m[(j, i)] -= &c;
            }
        }
    }
    Ok(())
}

/// Checks that the primitive part `P_{n+ℓ} = ker(N^{ℓ+1} : Gr_{n+ℓ} → Gr_{n-ℓ-2})`
/// is polarized by `Q_ℓ(u, v) = Q(u, N^ℓ v)`.
pub fn primitive_polarization_check(lmhs: &LimitingMixedHodge, ell: i64) -> Result<PolarizationOutcome, MhsError> {
    let g = lmhs.graded();
    let n = lmhs.weight();
    let a = n + ell;
    if !lmhs.w.is_rational() || purity(lmhs, &g, a).is_err() {
        return Err(MhsError::NotPure { weight: a });
    }
    let r = g.dim(a);
    let mut out = PolarizationOutcome {
        ell,
        primitive_dim: 0,
        first_relation: true,
        positivity: true,
        witness: None,
        detail: None,
    };
    if r == 0 {
        return Ok(out);
    }
    let nmat = lmhs.endo.n();
    let below = g.dim(n - ell - 2);
    let prim = if below == 0 {
        Subspace::full(r)
    } else {
        crate::exact::kernel(&g.induced(&nmat.pow((ell + 1) as u32), a, n - ell - 2))
    };
    out.primitive_dim = prim.dim();
    if prim.is_zero() {
        return Ok(out);
    }
    let lift = g.lift(a);
    // Q_ℓ on Gr_a coordinates
    let form = &(&lift.transpose() * lmhs.endo.lattice().q()) * &(&nmat.pow(ell as u32) * &lift);
    let fp = |p: i64| g.class_of(&lmhs.f.step(p), &lmhs.w, a).intersection(&prim);

    for p in 0..=a + 1 {
        let (u, v) = (fp(p), fp(a - p + 1));
        if u.is_zero() || v.is_zero() {
            continue;
        }
        let gram = &(&u.basis().transpose() * &form) * v.basis();
        if !gram.is_zero() {
            out.first_relation = false;
            out.witness = Some(g.lift_vector(a, &u.basis().column(0)));
            out.detail = Some(format!("Q_{ell}(F^{p}, F^{}) != 0 on P_{a}", a - p + 1));
            break;
        }
    }

    let mut total = 0;
    for p in 0..=a {
        let q = a - p;
        let hpq = fp(p).intersection(&fp(q).conj());
        if hpq.is_zero() {
            continue;
        }
        total += hpq.dim();
        let b = hpq.basis();
        let herm = (&(&b.transpose() * &form) * &b.conj()).scale(&GaussianRational::i_pow(p - q));
        if let Err(alpha) = hermitian_positive(&herm) {
            out.positivity = false;
            if out.witness.is_none() || out.first_relation {
                out.witness = alpha.map(|al| g.lift_vector(a, &b.mul_vec(&al)));
            }
            let msg = format!("i^(p-q) Q(u, N^{ell} conj u) not positive on P^({p},{q})");
            out.detail = Some(match out.detail.take() {
                Some(prev) => format!("{prev}; {msg}"),
                None => msg,
            });
            break;
        }
    }
    if out.positivity && total != prim.dim() {
        out.positivity = false;
        out.detail = Some(format!("Hodge pieces of P_{a} span {total} of {} dimensions", prim.dim()));
    }
    Ok(out)
}

/// Runs every axiom: weight filtration, purity for each `k`, `N` of type
/// `(-1,-1)`, and polarization of each primitive part.
pub fn validate_lmhs(lmhs: &LimitingMixedHodge) -> ValidationReport {
    let mut axioms = Vec::new();
    let n = lmhs.endo.n();
    let w = &lmhs.w;
    let center = lmhs.weight();

    if w.is_rational() {
        axioms.push(Axiom::ok("W.rational"));
    } else {
        axioms.push(Axiom::fail("W.rational", None, "weight filtration is not defined over Q"));
    }
    let built = weight_filtration(&lmhs.endo);
    let (lo, hi) = built.range();
    let (clo, chi) = w.range();
    let (lo, hi) = (lo.min(clo), hi.max(chi));
    if (lo..=hi).all(|k| built.step(k) == w.step(k)) {
        axioms.push(Axiom::ok("W.equals_W(N)"));
    } else {
        let k = (lo..=hi).find(|&k| built.step(k) != w.step(k)).unwrap();
        axioms.push(Axiom::fail("W.equals_W(N)", None, format!("W_{k} differs from the monodromy weight filtration")));
    }
    match lowers_weight_by_two(n, w) {
        Ok(()) => axioms.push(Axiom::ok("W.N_lowers_by_2")),
        Err(k) => {
            let v = w.step(k).basis_vectors().into_iter().find(|v| !w.step(k - 2).contains_vector(&n.mul_vec(v)));
            axioms.push(Axiom::fail("W.N_lowers_by_2", v, format!("N W_{k} not inside W_{}", k - 2)));
        }
    }
    for c in check_graded_isomorphisms(n, w) {
        let name = format!("W.graded_iso[l={}]", c.ell);
        if c.pass() {
            axioms.push(Axiom::ok(name));
        } else {
            let why = if c.well_defined { "not bijective" } else { "not well defined" };
            axioms.push(Axiom::fail(name, None, format!("N^{} : Gr_{} -> Gr_{} {why}", c.ell, center + c.ell, center - c.ell)));
        }
    }

    let g = lmhs.graded();
    let (low, high) = lmhs.weight_range();
    let mut pure = std::collections::BTreeMap::new();
    for k in low..=high {
        let name = format!("F.pure[k={k}]");
        let res = if w.is_rational() { purity(lmhs, &g, k) } else { Err(None) };
        pure.insert(k, res.is_ok());
        match res {
            Ok(()) => axioms.push(Axiom::ok(name)),
            Err(v) => axioms.push(Axiom::fail(name, v, format!("F does not induce a pure weight-{k} structure on Gr_{k}"))),
        }
    }

    match n_type(lmhs) {
        Ok(()) => axioms.push(Axiom::ok("N.type(-1,-1)")),
        Err((msg, v)) => axioms.push(Axiom::fail("N.type(-1,-1)", Some(v), msg)),
    }

    for ell in 0..=lmhs.endo.nilpotency_index() as i64 {
        let rel = format!("Q.first_relation[l={ell}]");
        let pos = format!("Q.positivity[l={ell}]");
        match primitive_polarization_check(lmhs, ell) {
            Ok(o) => {
                if o.first_relation {
                    axioms.push(Axiom::ok(rel));
                } else {
                    axioms.push(Axiom::fail(rel, o.witness.clone(), o.detail.clone().unwrap_or_default()));
                }
                if o.positivity {
                    axioms.push(Axiom::ok(pos));
                } else {
                    axioms.push(Axiom::fail(pos, o.witness, o.detail.unwrap_or_default()));
                }
            }
            Err(e) => {
                axioms.push(Axiom::fail(rel, None, e.to_string()));
                axioms.push(Axiom::fail(pos, None, e.to_string()));
            }
        }
    }
    ValidationReport { axioms }
}

/// `N^{ℓ+1}` kills the image of `F^n` in `Gr_{n+ℓ}` (modulo `W_{n-ℓ-3}`), for every `ℓ`.
pub fn top_hodge_classes_primitive(lmhs: &LimitingMixedHodge) -> bool {
    let n = lmhs.weight();
    let fnn = lmhs.f.step(n);
    let (_, high) = lmhs.w.range();
    (0..=(high - n).max(0)).all(|ell| {
        let src = fnn.intersection(&lmhs.w.step(n + ell));
        let target = lmhs.w.step(n - ell - 3);
        target.contains(&src.image(&lmhs.endo.n().pow((ell + 1) as u32)))
    })
}

/// Real rational structure used for conjugation: `conj` on `V` is entrywise.
pub fn conj_vector(v: &[GaussianRational]) -> Vec<GaussianRational> {
    v.iter().map(GaussianRational::conj).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::mhs::PolarizedLattice;

    fn build(q: &[&[i64]], n: &[&[i64]], f1: Vec<Vec<GaussianRational>>) -> LimitingMixedHodge {
        let lat = PolarizedLattice::new(1, ExactMatrix::from_i64(q)).unwrap();
        let endo = NilpotentEndo::new(lat, ExactMatrix::from_i64(n)).unwrap();
        let f = HodgeFiltration::new(vec![Subspace::full(2), Subspace::from_vectors(2, &f1).unwrap()]).unwrap();
        LimitingMixedHodge::new(endo, f, None).unwrap()
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(int(re), int(im))
    }

    const Q: &[&[i64]] = &[&[0, 1], &[-1, 0]];
    const N: &[&[i64]] = &[&[0, -1], &[0, 0]];

    #[test]
    fn elliptic_passes() {
        let l = build(Q, N, vec![vec![g(0, 0), g(1, 0)]]);
        let r = validate_lmhs(&l);
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(l.pg(), 1);
        assert!(top_hodge_classes_primitive(&l));
    }

    #[test]
    fn wrong_hodge_line_is_not_pure() {
        let l = build(Q, N, vec![vec![g(1, 0), g(0, 0)]]);
        assert!(check_n_type(&l));
        assert!(!induced_pure_check(&l, 2));
        let r = validate_lmhs(&l);
        assert!(!r.get("F.pure[k=2]").unwrap().pass);
        assert!(r.get("F.pure[k=2]").unwrap().witness.is_some());
    }

    #[test]
    fn sign_flips_break_positivity() {
        let e2 = vec![vec![g(0, 0), g(1, 0)]];
        let l = build(Q, &[&[0, 1], &[0, 0]], e2.clone());
        let o = primitive_polarization_check(&l, 1).unwrap();
        assert!(o.first_relation && !o.positivity);
        let l = build(&[&[0, -1], &[1, 0]], N, e2);
        let r = validate_lmhs(&l);
        assert!(!r.get("Q.positivity[l=1]").unwrap().pass);
        assert!(r.get("W.equals_W(N)").unwrap().pass);
    }

    #[test]
    fn pure_weight_one() {
        let l = build(Q, &[&[0, 0], &[0, 0]], vec![vec![g(1, 0), g(0, 1)]]);
        assert!(validate_lmhs(&l).all_pass());
        assert!(induced_pure_check(&l, 1));
        // the conjugate line has the opposite sign
        let bad = build(Q, &[&[0, 0], &[0, 0]], vec![vec![g(1, 0), g(0, -1)]]);
        let o = primitive_polarization_check(&bad, 0).unwrap();
        assert!(!o.positivity);
        // a real line is not a Hodge decomposition
        let real = build(Q, &[&[0, 0], &[0, 0]], vec![vec![g(1, 0), g(1, 0)]]);
        assert!(!induced_pure_check(&real, 1));
    }

    #[test]
    fn hermitian_elimination() {
        let h = ExactMatrix::from_i64(&[&[2, 1], &[1, 2]]);
        assert!(hermitian_positive(&h).is_ok());
        let h = ExactMatrix::from_i64(&[&[1, 2], &[2, 1]]);
        let alpha = hermitian_positive(&h).unwrap_err().unwrap();
        let col = ExactMatrix::column_vector(&alpha);
        let val = &(&col.transpose() * &h) * &col.conj();
        assert!(!val[(0, 0)].re.is_positive());
    }
}
