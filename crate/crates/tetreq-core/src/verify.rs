//! Numeric checks: the eight equations, the classic equation, Yang-Baxter,
//! the obstruction relations, unitarity, the `Q`-built reduction, and the
//! unitarity collapse.
//!
//! Every check reports the achieved maximum deviation together with the
//! tolerance it was judged against, never a bare boolean.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::tensor::{
    embed_letter, embed_on_sites, evaluate, CMatrix, GlobalSpaceBasis,
    ModelBundle, TensorError,
};
use crate::word::{
    classic_form, collapse_substitution, expand_shorthand, generate_equations,
    normalize_to_shorthand, TetraEquation, WordError,
};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operand for the requested check is missing: {0}")]
    MissingOperand(&'static str),
    #[error("the Q tensor does not satisfy the Yang-Baxter equation (residual {residual:.3e} > {tol:.3e})")]
    QNotYangBaxter { residual: f64, tol: f64 },
}

/// Default absolute tolerance for residual checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest leg dimension accepted for checks on a triple space (the
/// embedded operators are dense `d^3 x d^3` matrices).
pub const MAX_LEG_DIM: usize = 8;

fn guard_leg_dim(d: usize) -> Result<(), VerifyError> {
    if d == 0 || d > MAX_LEG_DIM {
        return Err(VerifyError::Shape(format!(
            "leg dimension {d} outside 1..={MAX_LEG_DIM}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance, pass: residual <= tolerance }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// The eight shorthand equations expanded back to operator words, in
/// presentation order.
pub fn eight_equations() -> Result<Vec<TetraEquation>, VerifyError> {
    let generated = generate_equations()?;
    let shorthand = normalize_to_shorthand(&generated.equations)?;
    Ok(shorthand.iter().map(expand_shorthand).collect())
}

/// Residual matrices `evaluate(lhs) - evaluate(rhs)` of the eight equations.
pub fn eight_residual_matrices(
    bundle: &ModelBundle,
) -> Result<Vec<(String, CMatrix)>, VerifyError> {
    eight_equations()?
        .iter()
        .map(|eq| {
            let lhs = evaluate(&eq.lhs, bundle)?;
            let rhs = evaluate(&eq.rhs, bundle)?;
            Ok((eq.name.clone(), lhs.sub(&rhs)))
        })
        .collect()
}

/// Verify the eight tetrahedron equations on a bundle.
pub fn verify_eight(bundle: &ModelBundle, tol: f64) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::default();
    for (name, diff) in eight_residual_matrices(bundle)? {
        report.push(CheckResult::new(format!("eight {name}"), diff.max_abs(), tol));
    }
    Ok(report)
}

/// Verify the classic equation
/// `S_123 S_145 S_246 S_356 = S_356 S_246 S_145 S_123` on the `m^6` space.
pub fn verify_classic(s: &CMatrix, m: usize, tol: f64) -> Result<VerifyReport, VerifyError> {
    if m == 0 || m > crate::tensor::MAX_M {
        return Err(VerifyError::Shape(format!(
            "m = {m} outside 1..={}",
            crate::tensor::MAX_M
        )));
    }
    let m3 = m * m * m;
    if s.dim() != m3 {
        return Err(VerifyError::Shape(format!("S must be m^3 x m^3, m={m}")));
    }
    let position_sets: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]];
    let factors: Vec<CMatrix> = position_sets
        .iter()
        .map(|p| embed_on_sites(s, p, 6, m))
        .collect();
    let total = m.pow(6);
    let mut lhs = CMatrix::identity(total);
    for f in &factors {
        lhs = lhs.mul(f);
    }
    let mut rhs = CMatrix::identity(total);
    for f in factors.iter().rev() {
        rhs = rhs.mul(f);
    }
    let mut report = VerifyReport::default();
    report.push(CheckResult::new("classic", lhs.max_abs_diff(&rhs), tol));
    Ok(report)
}

/// Permutation matrix swapping the two legs of a `d x d` product.
pub fn swap_legs(d: usize) -> CMatrix {
    let mut p = CMatrix::zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            p.set(b * d + a, a * d + b, Complex64::ONE);
        }
    }
    p
}

/// Verify `R_12 R_13 R_23 = R_23 R_13 R_12` on the `d^3` space.
pub fn verify_ybe(r: &CMatrix, d: usize, tol: f64) -> Result<VerifyReport, VerifyError> {
    guard_leg_dim(d)?;
    if r.dim() != d * d {
        return Err(VerifyError::Shape(format!("R must be d^2 x d^2, d={d}")));
    }
    let r12 = embed_on_sites(r, &[0, 1], 3, d);
    let r13 = embed_on_sites(r, &[0, 2], 3, d);
    let r23 = embed_on_sites(r, &[1, 2], 3, d);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let mut report = VerifyReport::default();
    report.push(CheckResult::new("ybe", lhs.max_abs_diff(&rhs), tol));
    Ok(report)
}

/// A family of `d` matrices on an `n`-dimensional space.
#[derive(Clone, Debug)]
pub struct RepFamily {
    pub d: usize,
    pub n: usize,
    pub mats: Vec<CMatrix>,
}

impl RepFamily {
    pub fn new(d: usize, n: usize, mats: Vec<CMatrix>) -> Result<Self, VerifyError> {
        if d == 0 || mats.len() != d || mats.iter().any(|m| m.dim() != n) {
            return Err(VerifyError::Shape(format!(
                "family needs {d} matrices of size {n} x {n}"
            )));
        }
        Ok(Self { d, n, mats })
    }
}

/// Verify the matrix-level obstruction
/// `M_j1 M_j2 = sum_k R_(j1 j2)^(k1 k2) M_k2 M_k1`.
pub fn verify_obstruction_yb(
    fam: &RepFamily,
    r: &CMatrix,
    tol: f64,
) -> Result<VerifyReport, VerifyError> {
    let d = fam.d;
    if r.dim() != d * d {
        return Err(VerifyError::Shape(format!("R must be d^2 x d^2, d={d}")));
    }
    let mut worst = 0.0f64;
    for j1 in 0..d {
        for j2 in 0..d {
            let lhs = fam.mats[j1].mul(&fam.mats[j2]);
            let mut rhs = CMatrix::zeros(fam.n);
            for k1 in 0..d {
                for k2 in 0..d {
                    let coeff = r.get(j1 * d + j2, k1 * d + k2);
                    if coeff == Complex64::ZERO {
                        continue;
                    }
                    rhs = rhs.add(&fam.mats[k2].mul(&fam.mats[k1]).scale(coeff));
                }
            }
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    let mut report = VerifyReport::default();
    report.push(CheckResult::new("obstruction-yb", worst, tol));
    Ok(report)
}

/// Indexed `R`-matrices on the three space pairs `(12)`, `(13)`, `(23)`:
/// `m` matrices per pair, each acting on `n x n` product legs.
#[derive(Clone, Debug)]
pub struct PairwiseR {
    pub m: usize,
    pub n: usize,
    pub r12: Vec<CMatrix>,
    pub r13: Vec<CMatrix>,
    pub r23: Vec<CMatrix>,
}

impl PairwiseR {
    pub fn new(
        m: usize,
        n: usize,
        r12: Vec<CMatrix>,
        r13: Vec<CMatrix>,
        r23: Vec<CMatrix>,
    ) -> Result<Self, VerifyError> {
        let ok = |v: &Vec<CMatrix>| v.len() == m && v.iter().all(|t| t.dim() == n * n);
        if m == 0 || !ok(&r12) || !ok(&r13) || !ok(&r23) {
            return Err(VerifyError::Shape(format!(
                "pairwise family needs {m} matrices of size n^2, n={n}, per pair"
            )));
        }
        Ok(Self { m, n, r12, r13, r23 })
    }

    /// The same matrix on every pair, external range `m = 1`.
    pub fn uniform(n: usize, r: CMatrix) -> Result<Self, VerifyError> {
        Self::new(1, n, alloc::vec![r.clone()], alloc::vec![r.clone()], alloc::vec![r])
    }
}

/// Verify the obstruction that defines `S`:
/// `R^a12_12 R^a13_13 R^a23_23 = sum_b S_(a..)^(b..) R^b23_23 R^b13_13 R^b12_12`,
/// and, when `stilde` is supplied, the mirrored relation defining `S~`.
pub fn verify_obstruction_tetra(
    pr: &PairwiseR,
    s: &CMatrix,
    stilde: Option<&CMatrix>,
    tol: f64,
) -> Result<VerifyReport, VerifyError> {
    let (m, n) = (pr.m, pr.n);
    guard_leg_dim(n)?;
    let m3 = m * m * m;
    if s.dim() != m3 {
        return Err(VerifyError::Shape(format!("S must be m^3 x m^3, m={m}")));
    }
    if let Some(st) = stilde {
        if st.dim() != m3 {
            return Err(VerifyError::Shape(format!("S~ must be m^3 x m^3, m={m}")));
        }
    }
    let e12: Vec<CMatrix> = pr.r12.iter().map(|r| embed_on_sites(r, &[0, 1], 3, n)).collect();
    let e13: Vec<CMatrix> = pr.r13.iter().map(|r| embed_on_sites(r, &[0, 2], 3, n)).collect();
    let e23: Vec<CMatrix> = pr.r23.iter().map(|r| embed_on_sites(r, &[1, 2], 3, n)).collect();

    let mut report = VerifyReport::default();
    let mut worst = 0.0f64;
    for a12 in 0..m {
        for a13 in 0..m {
            for a23 in 0..m {
                let lhs = e12[a12].mul(&e13[a13]).mul(&e23[a23]);
                let mut rhs = CMatrix::zeros(n * n * n);
                for b12 in 0..m {
                    for b13 in 0..m {
                        for b23 in 0..m {
                            let coeff = s.get(
                                (a12 * m + a13) * m + a23,
                                (b12 * m + b13) * m + b23,
                            );
                            if coeff == Complex64::ZERO {
                                continue;
                            }
                            let term = e23[b23].mul(&e13[b13]).mul(&e12[b12]).scale(coeff);
                            rhs = rhs.add(&term);
                        }
                    }
                }
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
    }
    report.push(CheckResult::new("obstruction-tetra", worst, tol));

    if let Some(st) = stilde {
        let mut worst = 0.0f64;
        for a23 in 0..m {
            for a13 in 0..m {
                for a12 in 0..m {
                    let lhs = e23[a23].mul(&e13[a13]).mul(&e12[a12]);
                    let mut rhs = CMatrix::zeros(n * n * n);
                    for b23 in 0..m {
                        for b13 in 0..m {
                            for b12 in 0..m {
                                let coeff = st.get(
                                    (a23 * m + a13) * m + a12,
                                    (b23 * m + b13) * m + b12,
                                );
                                if coeff == Complex64::ZERO {
                                    continue;
                                }
                                let term =
                                    e12[b12].mul(&e13[b13]).mul(&e23[b23]).scale(coeff);
                                rhs = rhs.add(&term);
                            }
                        }
                    }
                    worst = worst.max(lhs.max_abs_diff(&rhs));
                }
            }
        }
        report.push(CheckResult::new("obstruction-tetra-mirror", worst, tol));
    }
    Ok(report)
}

/// Operands for the three unitarity laws.
pub enum UnitarityCheck<'a> {
    /// `R_12 R_21 = id` with `R_21` the leg-swapped conjugate.
    RLevel { r: &'a CMatrix, d: usize },
    /// `S~_(23)(13)(12) S_(12)(13)(23) = id` on the triple space.
    SLevel { s: &'a CMatrix, stilde: &'a CMatrix, m: usize },
    /// `Q_(12)(34) Q_(34)(12) = id`.
    QLevel { q: &'a CMatrix, m: usize },
}

pub fn verify_unitarity(check: UnitarityCheck<'_>, tol: f64) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::default();
    match check {
        UnitarityCheck::RLevel { r, d } => {
            if r.dim() != d * d {
                return Err(VerifyError::Shape(format!("R must be d^2 x d^2, d={d}")));
            }
            let p = swap_legs(d);
            let r21 = p.mul(r).mul(&p);
            let res = r.mul(&r21).max_abs_diff(&CMatrix::identity(d * d));
            report.push(CheckResult::new("unitarity-r", res, tol));
        }
        UnitarityCheck::SLevel { s, stilde, m } => {
            let m3 = m * m * m;
            if s.dim() != m3 || stilde.dim() != m3 {
                return Err(VerifyError::Shape(format!(
                    "S and S~ must be m^3 x m^3, m={m}"
                )));
            }
            // embedded S~-letter on (23)(13)(12) is P S~ P
            let p = leg_reversal3(m);
            let st_emb = p.mul(stilde).mul(&p);
            let res = st_emb.mul(s).max_abs_diff(&CMatrix::identity(m3));
            report.push(CheckResult::new("unitarity-s", res, tol));
        }
        UnitarityCheck::QLevel { q, m } => {
            if q.dim() != m * m {
                return Err(VerifyError::Shape(format!("Q must be m^2 x m^2, m={m}")));
            }
            let p = swap_legs(m);
            let q21 = p.mul(q).mul(&p);
            let res = q.mul(&q21).max_abs_diff(&CMatrix::identity(m * m));
            report.push(CheckResult::new("unitarity-q", res, tol));
        }
    }
    Ok(report)
}

fn leg_reversal3(m: usize) -> CMatrix {
    let n = m * m * m;
    let mut p = CMatrix::zeros(n);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                p.set((c * m + b) * m + a, (a * m + b) * m + c, Complex64::ONE);
            }
        }
    }
    p
}

/// Build a bundle from a Yang-Baxter solution `Qy`:
/// `S = Q_(12)(13) Q_(12)(23) Q_(13)(23)` composed on the triple space, with
/// `S~` from unitarity and the `Q` letter tensor equal to `Qy` itself.
/// `Qy` must pass the Yang-Baxter check at `ybe_tol` first.
pub fn lawrence_construct(
    qy: &CMatrix,
    m: usize,
    ybe_tol: f64,
) -> Result<ModelBundle, VerifyError> {
    let ybe = verify_ybe(qy, m, ybe_tol)?;
    if !ybe.overall_pass() {
        return Err(VerifyError::QNotYangBaxter {
            residual: ybe.max_residual(),
            tol: ybe_tol,
        });
    }
    let q01 = embed_on_sites(qy, &[0, 1], 3, m);
    let q02 = embed_on_sites(qy, &[0, 2], 3, m);
    let q12 = embed_on_sites(qy, &[1, 2], 3, m);
    let s = q01.mul(&q02).mul(&q12);
    Ok(ModelBundle::new(m, s, None, Some(qy.clone()))?)
}

/// Result of the collapse check.
#[derive(Clone, Debug)]
pub struct CollapseReport {
    /// Per-letter residuals of `embedded S~_l^-1` against `embedded S_l`.
    pub letter: VerifyReport,
    /// Whether the eight shorthand lines become identical strings after the
    /// substitution `S~_l^-1 -> S_l`.
    pub words_identical: bool,
}

impl CollapseReport {
    /// The system degenerates to a single equation.
    pub fn collapses(&self) -> bool {
        self.letter.overall_pass() && self.words_identical
    }
}

/// Check the unitarity collapse for an invertible `S`: with `S~` from
/// unitarity, the embedded `S~_l^-1` must equal the embedded `S_l` for every
/// `l`, and after the substitution all eight shorthand equations are one.
pub fn collapse_check(s: &CMatrix, m: usize, tol: f64) -> Result<CollapseReport, VerifyError> {
    let bundle = ModelBundle::new(m, s.clone(), None, None)?;
    let basis = GlobalSpaceBasis::new();
    let mut letter = VerifyReport::default();
    for l in 1..=4u8 {
        let s_letter = crate::word::shorthand_s_letter(l);
        let st_inv = crate::word::shorthand_stilde_letter(l).inverse();
        let a = embed_letter(&s_letter, &bundle, &basis)?;
        let b = embed_letter(&st_inv, &bundle, &basis)?;
        letter.push(CheckResult::new(format!("collapse S{l}"), a.max_abs_diff(&b), tol));
    }
    let generated = generate_equations()?;
    let shorthand = normalize_to_shorthand(&generated.equations)?;
    let collapsed = collapse_substitution(&shorthand);
    let words_identical = collapsed.windows(2).all(|w| w[0] == w[1]);
    Ok(CollapseReport { letter, words_identical })
}

/// Residual of the classic form of equation `1,6` (a convenience wrapper
/// used by the cross-form consistency check).
pub fn classic_equation() -> Result<crate::word::ClassicEquation, VerifyError> {
    let generated = generate_equations()?;
    let one_six = generated
        .equations
        .iter()
        .find(|e| e.name == "1,6")
        .ok_or_else(|| VerifyError::Shape("equation 1,6 missing".to_string()))?;
    Ok(classic_form(one_six)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn identity_bundle_passes_everything_exactly() {
        let bundle = ModelBundle::identity(2).unwrap();
        let eight = verify_eight(&bundle, 0.0).unwrap();
        assert!(eight.overall_pass());
        assert_eq!(eight.max_residual(), 0.0);
        assert_eq!(eight.checks.len(), 8);

        let classic = verify_classic(&CMatrix::identity(8), 2, 0.0).unwrap();
        assert!(classic.overall_pass());

        let ybe = verify_ybe(&CMatrix::identity(4), 2, 0.0).unwrap();
        assert!(ybe.overall_pass());

        let s = CMatrix::identity(8);
        let st = CMatrix::identity(8);
        let q = CMatrix::identity(4);
        assert!(verify_unitarity(UnitarityCheck::SLevel { s: &s, stilde: &st, m: 2 }, 0.0)
            .unwrap()
            .overall_pass());
        assert!(verify_unitarity(UnitarityCheck::QLevel { q: &q, m: 2 }, 0.0)
            .unwrap()
            .overall_pass());
        assert!(verify_unitarity(UnitarityCheck::RLevel { r: &q, d: 2 }, 0.0)
            .unwrap()
            .overall_pass());
    }

    #[test]
    fn transposition_satisfies_ybe_and_unitarity() {
        let p = swap_legs(2);
        assert!(verify_ybe(&p, 2, 1e-14).unwrap().overall_pass());
        assert!(verify_unitarity(UnitarityCheck::QLevel { q: &p, m: 2 }, 1e-14)
            .unwrap()
            .overall_pass());
    }

    #[test]
    fn oversized_leg_dimension_rejected() {
        let r = CMatrix::identity(81);
        assert!(matches!(verify_ybe(&r, 9, 1e-10), Err(VerifyError::Shape(_))));
    }

    #[test]
    fn random_r_fails_ybe() {
        let mut rng = SplitMix64::new(21);
        let r = CMatrix::random(4, &mut rng);
        assert!(!verify_ybe(&r, 2, 1e-10).unwrap().overall_pass());
    }

    #[test]
    fn commuting_family_with_label_identity_passes() {
        // diagonal matrices commute; R = identity coefficients
        let mut d1 = CMatrix::zeros(2);
        d1.set(0, 0, Complex64::new(2.0, 0.0));
        d1.set(1, 1, Complex64::new(3.0, 0.0));
        let mut d2 = CMatrix::zeros(2);
        d2.set(0, 0, Complex64::new(-1.0, 1.0));
        d2.set(1, 1, Complex64::new(0.5, 0.0));
        let fam = RepFamily::new(2, 2, alloc::vec![d1, d2]).unwrap();
        let r = CMatrix::identity(4);
        assert!(verify_obstruction_yb(&fam, &r, 1e-14).unwrap().overall_pass());
    }

    #[test]
    fn single_matrix_family_passes_trivially() {
        let mut rng = SplitMix64::new(22);
        let m = CMatrix::random(3, &mut rng);
        let fam = RepFamily::new(1, 3, alloc::vec![m]).unwrap();
        let r = CMatrix::identity(1);
        assert!(verify_obstruction_yb(&fam, &r, 1e-14).unwrap().overall_pass());
    }

    #[test]
    fn random_family_fails() {
        let mut rng = SplitMix64::new(23);
        let fam = RepFamily::new(
            2,
            2,
            alloc::vec![CMatrix::random(2, &mut rng), CMatrix::random(2, &mut rng)],
        )
        .unwrap();
        let r = CMatrix::random(4, &mut rng);
        assert!(!verify_obstruction_yb(&fam, &r, 1e-10).unwrap().overall_pass());
    }

    #[test]
    fn obstruction_tetra_reduces_to_ybe_at_m1() {
        let scalar_one = CMatrix::identity(1);
        // a YBE solution passes
        let p = swap_legs(2);
        let pr = PairwiseR::uniform(2, p).unwrap();
        assert!(verify_obstruction_tetra(&pr, &scalar_one, Some(&scalar_one), 1e-14)
            .unwrap()
            .overall_pass());
        // a non-solution fails, matching verify_ybe's verdict
        let mut rng = SplitMix64::new(24);
        let r = CMatrix::random(4, &mut rng);
        let pr = PairwiseR::uniform(2, r.clone()).unwrap();
        let tetra = verify_obstruction_tetra(&pr, &scalar_one, None, 1e-10).unwrap();
        let ybe = verify_ybe(&r, 2, 1e-10).unwrap();
        assert_eq!(tetra.overall_pass(), ybe.overall_pass());
        assert!((tetra.max_residual() - ybe.max_residual()).abs() < 1e-13);
    }

    #[test]
    fn obstruction_tetra_identities_pass_any_m() {
        for m in 1..=2usize {
            let id_pair = CMatrix::identity(4);
            let pr = PairwiseR::new(
                m,
                2,
                alloc::vec![id_pair.clone(); m],
                alloc::vec![id_pair.clone(); m],
                alloc::vec![id_pair.clone(); m],
            )
            .unwrap();
            let s = CMatrix::identity(m * m * m);
            let rep = verify_obstruction_tetra(&pr, &s, Some(&s), 1e-14).unwrap();
            assert!(rep.overall_pass(), "m={m}: {rep:?}");
        }
    }

    #[test]
    fn lawrence_identity_gives_identity_bundle() {
        let bundle = lawrence_construct(&CMatrix::identity(4), 2, 1e-12).unwrap();
        assert_eq!(bundle.s, CMatrix::identity(8));
        assert!(verify_eight(&bundle, 0.0).unwrap().overall_pass());
    }

    #[test]
    fn lawrence_rejects_non_ybe_q() {
        let mut rng = SplitMix64::new(25);
        let q = CMatrix::random(4, &mut rng);
        assert!(matches!(
            lawrence_construct(&q, 2, 1e-12),
            Err(VerifyError::QNotYangBaxter { .. })
        ));
    }

    #[test]
    fn collapse_for_random_invertible_s() {
        let mut rng = SplitMix64::new(26);
        let s = CMatrix::random(8, &mut rng);
        let report = collapse_check(&s, 2, DEFAULT_TOL).unwrap();
        assert!(report.words_identical);
        assert!(report.letter.overall_pass(), "{:?}", report.letter);
        assert!(report.collapses());
    }
}
