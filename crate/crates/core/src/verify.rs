//! Named, machine-checkable verdicts for every structural, determinant and
//! spectral identity of the `A_{p,m}` / `A_p[c]` family.
//!
//! Check ids are stable strings such as `basic.latin` or `spec.mone`; the
//! README carries the table mapping each id to the statement it checks.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exact_linalg::{
    centrosymmetry_violation, det_bareiss, det_modular_crt, dominance_violation,
    latin_square_violation, is_normal, matmul,
};
use crate::matrices::{
    build_a, build_a_c, circulant, circulant_row, kernel_block_vectors, maillet_matrix,
    q_polynomial, shift_generator_q, similarity_permutation,
};
use crate::matrix::{EntryVector, ExactMatrix};
use crate::spectral::{
    eigen_residual, exact_zero_eigenvalues, spectrum, symmetry_class, symmetry_residual, Symmetry,
};
use crate::zmod::{euler_phi, find_primitive_roots, OddPrime, PrimitiveRoot};

/// Witness strings are cut to this many characters.
pub const WITNESS_LIMIT: usize = 512;

/// Seed used for random entry vectors when none is supplied.
pub const DEFAULT_SEED: u64 = 0x4d61_696c_6c65_74;

/// Default eigen-residual tolerance, scaled by `(p-1) max|c|` when applied.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subject {
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Subject {
    pub fn new(p: OddPrime) -> Self {
        Subject {
            p: p.get(),
            m: None,
            c_digest: None,
            h: None,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub checks: Vec<Check>,
    pub overall: bool,
}

fn cap(mut s: String) -> String {
    if s.chars().count() > WITNESS_LIMIT {
        s = s.chars().take(WITNESS_LIMIT - 3).collect();
        s.push_str("...");
    }
    s
}

impl VerificationReport {
    pub fn new(subject: Subject) -> Self {
        VerificationReport {
            subject,
            checks: Vec::new(),
            overall: true,
        }
    }

    pub fn record(&mut self, id: &str, passed: bool, witness: impl Into<String>) {
        let mut witness = cap(witness.into());
        if !passed && witness.is_empty() {
            witness = "failed".to_owned();
        }
        self.overall &= passed;
        self.checks.push(Check {
            id: id.to_owned(),
            passed,
            witness,
        });
    }

    /// Appends another report's checks; the subject stays this one's.
    pub fn absorb(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.overall &= c.passed;
            self.checks.push(c);
        }
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, then an overall line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.subject;
        let _ = write!(out, "subject: p={}", s.p);
        if let Some(m) = s.m {
            let _ = write!(out, " m={m}");
        }
        if let Some(h) = s.h {
            let _ = write!(out, " h={h}");
        }
        if let Some(d) = &s.c_digest {
            let _ = write!(out, " c={d}");
        }
        if let Some(seed) = s.seed {
            let _ = write!(out, " seed={seed}");
        }
        out.push('\n');
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {:<20} {}", c.id, c.witness);
        }
        let _ = writeln!(out, "overall: {}", if self.overall { "PASS" } else { "FAIL" });
        out
    }
}

/// FNV-1a over the decimal entries; identifies a `c` vector in reports.
pub fn digest(c: &EntryVector) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for v in c.as_slice() {
        for b in v.to_string().bytes().chain(std::iter::once(b',')) {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{hash:016x}")
}

fn index_list(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn basic_checks(report: &mut VerificationReport, prefix: &str, a: &ExactMatrix, diag: &BigInt, anti: &BigInt) {
    let n = a.rows();
    match latin_square_violation(a) {
        None => report.record(&format!("{prefix}.latin"), true, ""),
        Some(line) => report.record(&format!("{prefix}.latin"), false, format!("{line} is not a rearrangement of row 1 with distinct entries")),
    }
    match centrosymmetry_violation(a) {
        None => report.record(&format!("{prefix}.centro"), true, ""),
        Some((i, j)) => report.record(
            &format!("{prefix}.centro"),
            false,
            format!(
                "A({},{}) = {} but A({},{}) = {}",
                i + 1,
                j + 1,
                a[(i, j)],
                n - i,
                n - j,
                a[(n - 1 - i, n - 1 - j)]
            ),
        ),
    }
    match (0..n).find(|&i| &a[(i, i)] != diag) {
        None => report.record(&format!("{prefix}.diag"), true, format!("all diagonal entries = {diag}")),
        Some(i) => report.record(&format!("{prefix}.diag"), false, format!("A({0},{0}) = {1}, expected {diag}", i + 1, a[(i, i)])),
    }
    match (0..n).find(|&i| &a[(i, n - 1 - i)] != anti) {
        None => report.record(&format!("{prefix}.antidiag"), true, format!("all antidiagonal entries = {anti}")),
        Some(i) => report.record(
            &format!("{prefix}.antidiag"),
            false,
            format!("A({},{}) = {}, expected {anti}", i + 1, n - i, a[(i, n - 1 - i)]),
        ),
    }
}

/// Latin square, centrosymmetry, unit diagonal, `(p-1)^m` antidiagonal.
pub fn verify_basic(p: OddPrime, m: u32) -> Result<VerificationReport> {
    let a = build_a(p, m)?;
    Ok(verify_basic_matrix(p, m, &a))
}

/// [`verify_basic`] on a caller-supplied matrix, for negative controls.
pub fn verify_basic_matrix(p: OddPrime, m: u32, a: &ExactMatrix) -> VerificationReport {
    let mut report = VerificationReport::new(Subject { m: Some(m), ..Subject::new(p) });
    let anti = BigInt::from(p.get() - 1).pow(m);
    basic_checks(&mut report, "basic", a, &BigInt::from(1), &anti);
    report
}

/// `(p-1)^m > sum_{k=1}^{p-2} k^m`.
pub fn dominance_hypothesis(p: OddPrime, m: u32) -> bool {
    let top = BigInt::from(p.get() - 1).pow(m);
    let rest: BigInt = (1..p.get() - 1).map(|k| BigInt::from(k).pow(m)).sum();
    top > rest
}

/// Smallest integer `m` with `m >= log(p-2) / log((p-1)/(p-2))`; `None` for `p = 3`.
pub fn dominance_threshold(p: OddPrime) -> Option<u32> {
    let q = p.get() as f64;
    if p.get() == 3 {
        return None;
    }
    Some(((q - 2.0).ln() / ((q - 1.0) / (q - 2.0)).ln()).ceil() as u32)
}

/// The determinant lemma: divisibility by 4 and by `p`, the `p = 3` closed
/// form, vanishing for `m = 1`, and the diagonal-dominance regime.
pub fn verify_det_lemma(p: OddPrime, m: u32) -> Result<VerificationReport> {
    let a = build_a(p, m)?;
    let det = det_bareiss(&a)?;
    let mut report = VerificationReport::new(Subject { m: Some(m), ..Subject::new(p) });
    let q = p.get();
    if q >= 5 {
        let r = (&det % 4u32).abs();
        report.record("detinv.mod4", r.is_zero(), format!("det mod 4 = {r}"));
    }
    if q == 3 {
        let expected = BigInt::from(1) - BigInt::from(4).pow(m);
        report.record("detinv.p3", det == expected, format!("det = {det}, 1 - 4^m = {expected}"));
    }
    let r = (&det % q).abs();
    report.record("detinv.modp", r.is_zero(), format!("det mod {q} = {r}"));
    if m == 1 && q >= 5 {
        report.record("detinv.m1", det.is_zero(), format!("det = {det}"));
    }
    if dominance_hypothesis(p, m) {
        let j = crate::matrices::reversal(p.order())?.to_matrix();
        let ja = matmul(&j, &a)?;
        let dominant = dominance_violation(&ja);
        let passed = dominant.is_none() && !det.is_zero();
        let witness = match dominant {
            Some(i) => format!("J A not strictly dominant in row {}", i + 1),
            None => format!("J A strictly dominant, det has {} digits", digits(&det)),
        };
        report.record("detinv.dominance", passed, witness);
    }
    Ok(report)
}

/// Decimal digit count of `|v|` (1 for zero).
pub fn digits(v: &BigInt) -> usize {
    v.magnitude().to_string().len()
}

fn structure_checks(report: &mut VerificationReport, prefix: &str, c: &EntryVector, h: PrimitiveRoot) -> Result<()> {
    let p = h.modulus();
    let a = build_a_c(p, c)?;
    let n = p.order();

    let pm = similarity_permutation(h).to_matrix();
    let conj = matmul(&matmul(&pm, &a)?, &pm.transpose())?;
    let row = circulant_row(c, h)?;
    let expected = circulant(row.as_slice());
    if conj == expected {
        report.record(&format!("{prefix}.circulant"), true, format!("P A P^T = Circ(c(h^(k-1))), h = {h}"));
    } else {
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| conj[(i, j)] != expected[(i, j)])
            .expect("matrices differ");
        report.record(
            &format!("{prefix}.circulant"),
            false,
            format!("(P A P^T)({},{}) = {}, circulant has {}", i + 1, j + 1, conj[(i, j)], expected[(i, j)]),
        );
    }

    report.record(&format!("{prefix}.normal"), is_normal(&a), "A A^T vs A^T A");

    let qpoly = q_polynomial(c, h)?;
    report.record(
        &format!("{prefix}.qpoly"),
        qpoly == a,
        if qpoly == a { String::new() } else { "sum c(h^k) Q^k differs from A".to_owned() },
    );

    let q = shift_generator_q(h);
    let powers: Vec<_> = (1..=n).map(|k| q.pow(k)).collect();
    let cyclic = powers[n - 1].is_identity();
    let clash = (0..n).find_map(|k| {
        ((k + 1)..n).find_map(|k2| {
            (1..=n)
                .find(|&i| powers[k].apply(i) == powers[k2].apply(i))
                .map(|i| (k + 1, k2 + 1, i))
        })
    });
    let witness = match (cyclic, clash) {
        (false, _) => "Q^(p-1) != I".to_owned(),
        (true, Some((k, k2, i))) => format!("Q^{k} and Q^{k2} share a nonzero in row {i}"),
        (true, None) => format!("Q^{n} = I, powers pairwise disjoint"),
    };
    report.record(&format!("{prefix}.qgroup"), cyclic && clash.is_none(), witness);

    let inv = h.inverse();
    let inv_row = circulant_row(c, inv)?;
    let transposed = circulant(inv_row.as_slice()) == expected.transpose();
    report.record(
        &format!("{prefix}.transpose"),
        transposed,
        format!("h^-1 = {inv} gives the transposed circulant"),
    );
    Ok(())
}

/// Circulant similarity, normality, the `Q`-polynomial form and its cyclic
/// group, transposition under `h^{-1}`, and the count of distinct circulants.
pub fn verify_structure(p: OddPrime, m: u32, h: PrimitiveRoot) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Subject {
        m: Some(m),
        h: Some(h.value()),
        ..Subject::new(p)
    });
    let c = EntryVector::powers(p, m);
    structure_checks(&mut report, "struct", &c, h)?;
    let rows: BTreeSet<Vec<BigInt>> = find_primitive_roots(p)
        .into_iter()
        .map(|g| circulant_row(&c, g).map(EntryVector::into_vec))
        .collect::<Result<_>>()?;
    let phi = euler_phi(p.get() - 1) as usize;
    report.record(
        "struct.count",
        rows.len() == phi,
        format!("{} distinct circulants, phi(p-1) = {phi}", rows.len()),
    );
    Ok(report)
}

fn spectral_checks(
    report: &mut VerificationReport,
    prefix: &str,
    c: &EntryVector,
    h: PrimitiveRoot,
    tol: f64,
) -> Result<(BTreeSet<usize>, BigInt)> {
    let p = h.modulus();
    let n = p.order();
    let a = build_a_c(p, c)?;
    let af = a.to_complex();
    let spec = spectrum(c, h)?;

    let max_c = c.as_slice().iter().map(|v| v.abs()).max().unwrap_or_default();
    let scale = max_c.to_f64().unwrap_or(f64::INFINITY).max(1.0) * n as f64;
    let threshold = tol * scale;
    let mut worst = (0.0, 0);
    for e in &spec.eigenpairs {
        let r = eigen_residual(&af, e.lambda, &e.nu)?;
        if r > worst.0 || r.is_nan() {
            worst = (r, e.ell);
        }
    }
    report.record(
        &format!("{prefix}.residual"),
        worst.0 <= threshold,
        format!("max residual {:.3e} at l = {} (threshold {:.3e})", worst.0, worst.1, threshold),
    );

    let mut worst_sym = (0.0, 0);
    for e in &spec.eigenpairs {
        let r = symmetry_residual(&e.nu, symmetry_class(e.ell));
        if r > worst_sym.0 || r.is_nan() {
            worst_sym = (r, e.ell);
        }
    }
    let half = p.half();
    let sign_vec = &spec.eigenpairs[half - 1].nu;
    let is_sign = sign_vec
        .iter()
        .all(|z| z.im.abs() <= tol && (z.re.abs() - 1.0).abs() <= tol);
    let expected_class = if p.get() % 4 == 1 { Symmetry::Symmetric } else { Symmetry::Skew };
    let sign_ok = is_sign && symmetry_residual(sign_vec, expected_class) <= tol;
    report.record(
        &format!("{prefix}.symmetry"),
        worst_sym.0 <= tol && sign_ok,
        format!(
            "max |J nu - (-1)^l nu| = {:.3e} at l = {}; nu_{half} is a {} sign vector: {}",
            worst_sym.0, worst_sym.1, expected_class, sign_ok
        ),
    );

    let zeros = exact_zero_eigenvalues(c, h)?;
    let det = det_bareiss(&a)?;
    let spectral = crate::spectral::det_spectral_exact(c, h)?;
    let crt = det_modular_crt(&a)?;
    let agree = det == spectral && det == crt;
    report.record(
        &format!("{prefix}.det"),
        agree,
        if agree {
            format!("det = {det}")
        } else {
            format!("bareiss = {det}, crt = {crt}, spectral = {spectral}")
        },
    );
    Ok((zeros, det))
}

/// Eigen-residuals, symmetry classes, exact zero eigenvalues for `m = 1`,
/// the kernel block vectors, and spectral-vs-elimination determinants.
pub fn verify_spectrum(p: OddPrime, m: u32, h: PrimitiveRoot, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Subject {
        m: Some(m),
        h: Some(h.value()),
        ..Subject::new(p)
    });
    let c = EntryVector::powers(p, m);
    let (zeros, _) = spectral_checks(&mut report, "spec", &c, h, tol)?;
    let n = p.order();
    if m == 1 && p.get() >= 5 {
        let even: BTreeSet<usize> = (2..n).step_by(2).collect();
        let passed = even.is_subset(&zeros) && !zeros.contains(&n);
        report.record(
            "spec.mone",
            passed,
            format!("exact zeros at l in {}, expected even l != {n}: {}", index_list(&zeros), index_list(&even)),
        );
        let k = kernel_block_vectors(p)?;
        let prod = matmul(&build_a(p, 1)?, &k)?;
        report.record(
            "spec.kernel",
            prod.is_zero(),
            format!("A_(p,1) times {} kernel block vectors", k.cols()),
        );
    }
    Ok(report)
}

/// All analogues for `A_p[c]`, plus commutation of
/// `{A[c], A[c'], A[c]^T, A[c']^T}` and the invertibility criterion.
pub fn verify_general(
    p: OddPrime,
    c: &EntryVector,
    c2: &EntryVector,
    h: PrimitiveRoot,
    tol: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Subject {
        c_digest: Some(digest(c)),
        h: Some(h.value()),
        ..Subject::new(p)
    });
    let a = build_a_c(p, c)?;
    basic_checks(&mut report, "gen", &a, c.at(1), c.at(p.order()));
    structure_checks(&mut report, "gen", c, h)?;
    let (zeros, det) = spectral_checks(&mut report, "gen", c, h, tol)?;

    report.record(
        "gen.invertible",
        det.is_zero() == !zeros.is_empty(),
        format!("det is zero: {}, exact zero eigenvalues at {}", det.is_zero(), index_list(&zeros)),
    );

    let b = build_a_c(p, c2)?;
    let family = [("A[c]", a.clone()), ("A[c']", b.clone()), ("A[c]^T", a.transpose()), ("A[c']^T", b.transpose())];
    let mut clash = None;
    'outer: for i in 0..family.len() {
        for j in i + 1..family.len() {
            if matmul(&family[i].1, &family[j].1)? != matmul(&family[j].1, &family[i].1)? {
                clash = Some((family[i].0, family[j].0));
                break 'outer;
            }
        }
    }
    report.record(
        "gen.commute",
        clash.is_none(),
        match clash {
            Some((x, y)) => format!("{x} and {y} do not commute"),
            None => "all six pairs commute".to_owned(),
        },
    );
    Ok(report)
}

/// Random integer entry vector with entries in `[-bound, bound]`; with
/// `distinct`, entries are sampled without replacement.
pub fn random_entry_vector(p: OddPrime, rng: &mut impl Rng, bound: i64, distinct: bool) -> EntryVector {
    let n = p.order();
    let values: Vec<i64> = if distinct {
        let span = (2 * bound + 1).max(n as i64);
        let mut pool: Vec<i64> = (-span / 2..=span / 2 + 1).collect();
        pool.shuffle(rng);
        pool.truncate(n);
        pool
    } else {
        (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
    };
    EntryVector::from_i64(p, &values).expect("length p - 1")
}

/// The pair `(c, c')` used by [`verify_all`] for a given seed.
pub fn seeded_pair(p: OddPrime, seed: u64) -> (EntryVector, EntryVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.get());
    let c = random_entry_vector(p, &mut rng, 50, true);
    let c2 = random_entry_vector(p, &mut rng, 50, true);
    (c, c2)
}

/// Everything at once: basic, determinant lemma, structure, spectrum, and
/// the general checks on a seeded random pair.
pub fn verify_all(p: OddPrime, m: u32, h: PrimitiveRoot, tol: f64, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Subject {
        m: Some(m),
        h: Some(h.value()),
        seed: Some(seed),
        ..Subject::new(p)
    });
    report.absorb(verify_basic(p, m)?);
    report.absorb(verify_det_lemma(p, m)?);
    report.absorb(verify_structure(p, m, h)?);
    report.absorb(verify_spectrum(p, m, h, tol)?);
    let (c, c2) = seeded_pair(p, seed);
    report.subject.c_digest = Some(digest(&c));
    report.absorb(verify_general(p, &c, &c2, h, tol)?);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MailletDeterminant {
    pub p: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub value: BigInt,
    /// `p^{(p-3)/2}` divides the value.
    pub divisible_by_p_power: bool,
    pub nonzero: bool,
    /// `value / p^{(p-3)/2}` when divisible.
    #[serde(serialize_with = "serialize_opt_decimal")]
    pub quotient: Option<BigInt>,
}

fn serialize_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn serialize_opt_decimal<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Determinant of the classical `(p-1)/2` Maillet matrix with its
/// nonvanishing and `p^{(p-3)/2}` divisibility.
pub fn maillet_determinant(p: OddPrime) -> Result<MailletDeterminant> {
    let value = det_bareiss(&maillet_matrix(p))?;
    let power = BigInt::from(p.get()).pow(((p.get() - 3) / 2) as u32);
    let divisible = (&value % &power).is_zero();
    Ok(MailletDeterminant {
        p: p.get(),
        nonzero: !value.is_zero(),
        divisible_by_p_power: divisible,
        quotient: divisible.then(|| &value / &power),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn ids(r: &VerificationReport) -> Vec<&str> {
        r.checks.iter().map(|c| c.id.as_str()).collect()
    }

    #[test]
    fn basic_passes() {
        for (q, m) in [(7, 2), (3, 1), (31, 3)] {
            let r = verify_basic(p(q), m).unwrap();
            assert!(r.overall, "{}", r.to_text());
            assert_eq!(ids(&r), ["basic.latin", "basic.centro", "basic.diag", "basic.antidiag"]);
        }
    }

    #[test]
    fn basic_negative_controls() {
        let q = p(7);
        let mut a = build_a(q, 2).unwrap();
        a[(2, 4)] = BigInt::from(4);
        let r = verify_basic_matrix(q, 2, &a);
        assert!(!r.overall);
        let latin = r.check("basic.latin").unwrap();
        assert!(!latin.passed);
        assert!(latin.witness.contains("row 3"), "{}", latin.witness);
        assert!(!r.check("basic.centro").unwrap().passed);

        let mut a = build_a(q, 2).unwrap();
        a[(1, 1)] = BigInt::from(7);
        a[(4, 4)] = BigInt::from(7);
        let r = verify_basic_matrix(q, 2, &a);
        assert!(r.check("basic.centro").unwrap().passed);
        assert!(!r.check("basic.diag").unwrap().passed);
        assert!(r.check("basic.diag").unwrap().witness.contains("A(2,2) = 7"));

        let mut a = build_a(q, 2).unwrap();
        a[(0, 5)] = BigInt::from(0);
        assert!(!verify_basic_matrix(q, 2, &a).check("basic.antidiag").unwrap().passed);
    }

    #[test]
    fn det_lemma_examples() {
        let r = verify_det_lemma(p(5), 1).unwrap();
        assert!(r.overall);
        assert_eq!(ids(&r), ["detinv.mod4", "detinv.modp", "detinv.m1"]);
        assert_eq!(r.check("detinv.m1").unwrap().witness, "det = 0");

        let r = verify_det_lemma(p(3), 4).unwrap();
        assert!(r.overall);
        assert!(r.check("detinv.p3").unwrap().witness.starts_with("det = -255"));

        assert!(dominance_hypothesis(p(5), 4));
        // 4^2 = 16 > 1 + 4 + 9, while 4 < 1 + 2 + 3.
        assert!(dominance_hypothesis(p(5), 2));
        assert!(!dominance_hypothesis(p(5), 1));
        assert!(!dominance_hypothesis(p(7), 2));
        let r = verify_det_lemma(p(5), 4).unwrap();
        assert!(r.check("detinv.dominance").unwrap().passed);
    }

    #[test]
    fn dominance_threshold_implies_hypothesis() {
        for q in OddPrime::up_to(23).into_iter().filter(|q| q.get() >= 5) {
            let t = dominance_threshold(q).unwrap();
            for m in t..t + 3 {
                assert!(dominance_hypothesis(q, m), "p = {q}, m = {m}");
            }
        }
        assert_eq!(dominance_threshold(p(3)), None);
    }

    #[test]
    fn structure_examples() {
        for m in 1..=3 {
            let r = verify_structure(p(5), m, PrimitiveRoot::new(2, p(5)).unwrap()).unwrap();
            assert!(r.overall, "{}", r.to_text());
            assert_eq!(r.check("struct.count").unwrap().witness, "2 distinct circulants, phi(p-1) = 2");
            let r = verify_structure(p(7), m, PrimitiveRoot::new(5, p(7)).unwrap()).unwrap();
            assert!(r.overall);
            assert!(r.check("struct.count").unwrap().witness.starts_with("2 distinct"));
        }
    }

    #[test]
    fn spectrum_examples() {
        let h13 = PrimitiveRoot::smallest(p(13));
        let r = verify_spectrum(p(13), 1, h13, DEFAULT_TOL).unwrap();
        assert!(r.overall, "{}", r.to_text());
        assert!(r.check("spec.mone").unwrap().witness.starts_with("exact zeros at l in {2,4,6,8,10}"));

        let r = verify_spectrum(p(5), 2, PrimitiveRoot::new(2, p(5)).unwrap(), DEFAULT_TOL).unwrap();
        assert!(r.overall);
        assert_eq!(r.check("spec.det").unwrap().witness, "det = 30000");
        assert!(r.check("spec.mone").is_none());

        for q in [5u64, 13, 17, 7, 11] {
            let r = verify_spectrum(p(q), 2, PrimitiveRoot::smallest(p(q)), DEFAULT_TOL).unwrap();
            let sym = r.check("spec.symmetry").unwrap();
            assert!(sym.passed);
            let class = if q % 4 == 1 { "symmetric" } else { "skew" };
            assert!(sym.witness.contains(class), "{}", sym.witness);
        }
    }

    #[test]
    fn general_reproduces_power_case() {
        for (q, m) in [(7u64, 1u32), (11, 2), (13, 1)] {
            let q = p(q);
            let h = PrimitiveRoot::smallest(q);
            let c = EntryVector::powers(q, m);
            let g = verify_general(q, &c, &EntryVector::powers(q, m + 1), h, DEFAULT_TOL).unwrap();
            assert!(g.overall, "{}", g.to_text());
            let basic = verify_basic(q, m).unwrap();
            let spec = verify_spectrum(q, m, h, DEFAULT_TOL).unwrap();
            for id in ["latin", "centro", "diag", "antidiag"] {
                let lhs = g.check(&format!("gen.{id}")).unwrap();
                let rhs = basic.check(&format!("basic.{id}")).unwrap();
                assert_eq!(lhs.passed, rhs.passed);
                assert_eq!(lhs.witness, rhs.witness);
            }
            for id in ["residual", "symmetry", "det"] {
                let lhs = g.check(&format!("gen.{id}")).unwrap();
                let rhs = spec.check(&format!("spec.{id}")).unwrap();
                assert_eq!(lhs, &Check { id: lhs.id.clone(), ..rhs.clone() });
            }
            assert_eq!(g.check("gen.invertible").unwrap().passed, true);
        }
    }

    #[test]
    fn general_with_repeated_entries_fails_latin_only() {
        let q = p(5);
        let c = EntryVector::from_i64(q, &[1, 1, 2, 3]).unwrap();
        let r = verify_general(q, &c, &c, PrimitiveRoot::smallest(q), DEFAULT_TOL).unwrap();
        assert!(!r.overall);
        let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(failed, ["gen.latin"]);
    }

    #[test]
    fn general_random_pairs_commute() {
        let q = p(11);
        for seed in 0..5 {
            let (c, c2) = seeded_pair(q, seed);
            assert!(c.is_distinct() && c2.is_distinct());
            let r = verify_general(q, &c, &c2, PrimitiveRoot::smallest(q), DEFAULT_TOL).unwrap();
            assert!(r.overall, "{}", r.to_text());
        }
    }

    #[test]
    fn commute_negative_control() {
        // The commute check itself: two non-commuting matrices are detected.
        let x = ExactMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let y = x.transpose();
        assert_ne!(matmul(&x, &y).unwrap(), matmul(&y, &x).unwrap());
    }

    #[test]
    fn verify_all_is_deterministic() {
        let q = p(7);
        let h = PrimitiveRoot::smallest(q);
        let a = verify_all(q, 2, h, DEFAULT_TOL, 42).unwrap();
        let b = verify_all(q, 2, h, DEFAULT_TOL, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.overall, "{}", a.to_text());
        assert_eq!(a.subject.seed, Some(42));
    }

    #[test]
    fn json_shape() {
        let r = verify_basic(p(3), 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["subject"]["p"], 3);
        assert_eq!(v["overall"], true);
        assert_eq!(v["checks"][0]["id"], "basic.latin");
        assert!(v["checks"][0]["passed"].as_bool().unwrap());
        assert!(v["checks"][0]["witness"].is_string());
    }

    #[test]
    fn witnesses_are_capped() {
        let mut r = VerificationReport::new(Subject::new(p(3)));
        r.record("x", false, "y".repeat(2000));
        assert_eq!(r.checks[0].witness.chars().count(), WITNESS_LIMIT);
        r.record("z", false, "");
        assert!(!r.checks[1].witness.is_empty());
    }

    #[test]
    fn maillet_examples() {
        let m5 = maillet_determinant(p(5)).unwrap();
        assert_eq!(m5.value, BigInt::from(-5));
        assert!(m5.divisible_by_p_power && m5.nonzero);
        let m7 = maillet_determinant(p(7)).unwrap();
        assert!(m7.nonzero && m7.divisible_by_p_power);
        assert!((&m7.value % 49u32).is_zero());
        let m3 = maillet_determinant(p(3)).unwrap();
        assert_eq!(m3.value, BigInt::from(1));
        assert!(m3.divisible_by_p_power && m3.nonzero);
    }
}
