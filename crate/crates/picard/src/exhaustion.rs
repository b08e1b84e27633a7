//! Exhaustion functions f_P, parabolic representatives, admissible families,
//! cusp-height argmax sets, spine membership, and first-contact points.
//!
//! A rational parabolic subgroup is encoded by the primitive isotropic vector
//! v_P = (n, p, q) spanning the cusp line it stabilizes; P0 <-> (1,0,0). The
//! exhaustion function of P at z = (y, beta, r) is
//!
//!   f_P(z) = y / ( |n - beta p + (i|beta|^2/2 - r) q|^2
//!                  + y^2 |p - i conj(beta) q|^2 + y^4 |q|^2 )^{1/2},
//!
//! which degenerates to f_{P0}(z) = y.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::GaussVec3;
use crate::hermitian::{form_q, parse_word, GMatrix};
use crate::horoball::HoroPoint;
use crate::optimize::NelderMead;

pub const DEFAULT_OPTIMIZER_BUDGET: u64 = 100_000;

/// A rational parabolic subgroup, as the canonical unit representative of its
/// primitive isotropic vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParabolicRep {
    v: GaussVec3,
}

impl ParabolicRep {
    /// Canonicalizes and validates: v must be primitive and isotropic.
    pub fn new(v: GaussVec3) -> Result<ParabolicRep> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !v.is_primitive()? {
            return Err(Error::Invalid(format!("{v} is not primitive")));
        }
        let v = v.canonical_unit_rep()?;
        if !form_q(&v, &v).is_zero() {
            return Err(Error::Invalid(format!("{v} is not isotropic")));
        }
        Ok(ParabolicRep { v })
    }

    pub fn from_i64(n: (i64, i64), p: (i64, i64), q: (i64, i64)) -> Result<ParabolicRep> {
        ParabolicRep::new(GaussVec3::from_i64(n, p, q))
    }

    /// The base cusp P0, v = (1, 0, 0).
    pub fn base() -> ParabolicRep {
        ParabolicRep {
            v: GaussVec3::from_i64((1, 0), (0, 0), (0, 0)),
        }
    }

    pub fn vector(&self) -> &GaussVec3 {
        &self.v
    }

    pub fn parse(s: &str) -> Result<ParabolicRep> {
        ParabolicRep::new(GaussVec3::parse(s)?)
    }
}

impl fmt::Display for ParabolicRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// An ordered set of distinct parabolics, kept in canonical sort order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParabolicFamily {
    reps: Vec<ParabolicRep>,
}

impl ParabolicFamily {
    pub fn new(mut reps: Vec<ParabolicRep>) -> ParabolicFamily {
        reps.sort();
        reps.dedup();
        ParabolicFamily { reps }
    }

    pub fn reps(&self) -> &[ParabolicRep] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains(&self, p: &ParabolicRep) -> bool {
        self.reps.binary_search(p).is_ok()
    }

    /// Element-wise image under g, as a canonical set.
    pub fn apply_gamma(&self, g: &GMatrix) -> ParabolicFamily {
        ParabolicFamily::new(self.reps.iter().map(|p| apply_gamma(g, p)).collect())
    }

    /// One "n,p,q" vector per line; blank lines and '#' comments are skipped.
    pub fn parse_file_contents(s: &str) -> Result<ParabolicFamily> {
        let mut reps = Vec::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            reps.push(ParabolicRep::parse(line)?);
        }
        if reps.is_empty() {
            return Err(Error::Invalid("family file contains no vectors".into()));
        }
        Ok(ParabolicFamily::new(reps))
    }
}

/// f_P(z); strictly positive, and exactly y for P0.
pub fn f_exhaustion(p: &ParabolicRep, z: &HoroPoint) -> f64 {
    let [n, pp, q] = p.v.to_complex();
    f_raw(n, pp, q, z)
}

fn f_raw(n: Complex64, p: Complex64, q: Complex64, z: &HoroPoint) -> f64 {
    z.y / s_terms(n, p, q, z).sqrt()
}

/// The denominator sum of f^2: |n - c|^2 + y^2 |p - i conj(beta) q|^2 +
/// y^4 |q|^2, so f = y / sqrt(s_terms). Exposed for the stabilizer search,
/// which prunes columns by their S value.
pub(crate) fn s_terms(n: Complex64, p: Complex64, q: Complex64, z: &HoroPoint) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let c = z.beta * p - (i * z.beta.norm_sqr() / 2.0 - z.r) * q;
    let t1 = (n - c).norm_sqr();
    let t2 = z.y * z.y * (p - i * z.beta.conj() * q).norm_sqr();
    let t3 = z.y.powi(4) * q.norm_sqr();
    t1 + t2 + t3
}

/// v_{^gP} = g v_P, recanonicalized. Gamma preserves both invariants.
pub fn apply_gamma(g: &GMatrix, p: &ParabolicRep) -> ParabolicRep {
    ParabolicRep::new(g.mul_vec(&p.v)).expect("unimodular image of a parabolic vector")
}

/// |Q(v_P, v_Q)|^2, exact; zero iff the cusp lines coincide.
pub fn pairing_norm(p: &ParabolicRep, q: &ParabolicRep) -> BigInt {
    form_q(&p.v, &q.v).norm()
}

/// Strong admissibility: (|I| <= 5 and all pairwise |Q|^2 <= 2) or
/// (|I| = 8 and all pairwise |Q|^2 <= 4).
pub fn is_strongly_admissible(fam: &ParabolicFamily) -> bool {
    let n = fam.reps.len();
    if n == 0 {
        return false;
    }
    let mut max_pair = BigInt::from(0);
    for (k, p) in fam.reps.iter().enumerate() {
        for q in &fam.reps[k + 1..] {
            let pn = pairing_norm(p, q);
            if pn > max_pair {
                max_pair = pn;
            }
        }
    }
    (n <= 5 && max_pair <= BigInt::from(2)) || (n == 8 && max_pair <= BigInt::from(4))
}

fn gauss_in_disk(center: Complex64, radius: f64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let pad = 1e-9 * radius.max(1.0);
    let r2 = radius * radius + pad;
    let lo_re = (center.re - radius - pad).ceil() as i64;
    let hi_re = (center.re + radius + pad).floor() as i64;
    let lo_im = (center.im - radius - pad).ceil() as i64;
    let hi_im = (center.im + radius + pad).floor() as i64;
    for a in lo_re..=hi_re {
        for b in lo_im..=hi_im {
            let da = a as f64 - center.re;
            let db = b as f64 - center.im;
            if da * da + db * db <= r2 {
                out.push((a, b));
            }
        }
    }
    out
}

/// All canonical P with f_P(z) >= max_P f_P(z) - tol.
///
/// The search is finite: f_P(z) >= t bounds each denominator term of f_P by
/// (y/t)^2, giving in turn
///
///   y^4 |q|^2        <= y^2/t^2  =>  |q| <= 1/(t y),
///   y^2 |p - i b q|^2 <= y^2/t^2  =>  p lies in the disk of radius 1/t
///                                     centered at i conj(beta) q,
///   |n - c(p, q)|^2  <= y^2/t^2  =>  n lies in the disk of radius y/t
///                                     centered at beta p - (i|beta|^2/2 - r) q,
///
/// and since the maximum is at least f_{P0}(z) = y, the threshold t = y - tol
/// already captures every candidate within tol of the max. Isotropy pins n to
/// the line 2 Im(n conj(q)) = |p|^2 inside its disk; non-primitive vectors are
/// skipped (their primitive part does strictly better).
pub fn argmax_parabolics(z: &HoroPoint, tol: f64) -> Result<ParabolicFamily> {
    let t = z.y - tol;
    if t <= 0.0 {
        return Err(Error::BoundaryGuard { min_y: tol });
    }
    let mut candidates: BTreeMap<GaussVec3, f64> = BTreeMap::new();
    // q = 0 forces p = 0, then primitivity forces n to be a unit: P0 itself.
    candidates.insert(ParabolicRep::base().v, z.y);

    let ib = Complex64::new(0.0, 1.0) * z.beta.conj();
    let cq = Complex64::new(0.0, 1.0) * z.beta.norm_sqr() / 2.0 - z.r;
    let q_bound = 1.0 / (t * z.y);
    for (qa, qb) in gauss_in_disk(Complex64::new(0.0, 0.0), q_bound) {
        if qa == 0 && qb == 0 {
            continue;
        }
        let q = Complex64::new(qa as f64, qb as f64);
        for (pa, pb) in gauss_in_disk(ib * q, 1.0 / t) {
            let pnorm = pa * pa + pb * pb;
            // isotropy demands |p|^2 = 2 Im(n conj(q)): even
            if pnorm % 2 != 0 {
                continue;
            }
            let p = Complex64::new(pa as f64, pb as f64);
            for (na, nb) in gauss_in_disk(z.beta * p - cq * q, z.y / t) {
                // Im(n conj(q)) = nb*qa - na*qb
                if 2 * (nb * qa - na * qb) != pnorm {
                    continue;
                }
                let v = GaussVec3::from_i64((na, nb), (pa, pb), (qa, qb));
                if !v.is_primitive()? {
                    continue;
                }
                let f = f_raw(Complex64::new(na as f64, nb as f64), p, q, z);
                if f >= t {
                    candidates.insert(v.canonical_unit_rep()?, f);
                }
            }
        }
    }

    let max_f = candidates.values().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let reps = candidates
        .into_iter()
        .filter(|&(_, f)| f >= max_f - tol)
        .map(|(v, _)| ParabolicRep { v })
        .collect();
    Ok(ParabolicFamily { reps })
}

/// Spine membership: at least two cusps attain the maximal height.
pub fn in_spine(z: &HoroPoint, tol: f64) -> bool {
    match argmax_parabolics(z, tol) {
        Ok(fam) => fam.len() >= 2,
        Err(_) => false,
    }
}

/// All canonical primitive isotropic vectors with every entry of norm
/// <= height, in canonical sort order.
pub fn enumerate_isotropic(height: i64) -> Result<Vec<ParabolicRep>> {
    if height < 1 {
        return Err(Error::Invalid(format!("height must be >= 1, got {height}")));
    }
    let b = (height as f64).sqrt().floor() as i64;
    let mut coords = Vec::new();
    for a in -b..=b {
        for c in -b..=b {
            if a * a + c * c <= height {
                coords.push((a, c));
            }
        }
    }
    let mut out: Vec<GaussVec3> = Vec::new();
    for &n in &coords {
        for &p in &coords {
            let pnorm = p.0 * p.0 + p.1 * p.1;
            for &q in &coords {
                // |p|^2 = 2 Im(n conj(q))
                if pnorm != 2 * (n.1 * q.0 - n.0 * q.1) {
                    continue;
                }
                let v = GaussVec3::from_i64(n, p, q);
                if v.is_zero() || !v.is_primitive()? {
                    continue;
                }
                out.push(v.canonical_unit_rep()?);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out.into_iter().map(|v| ParabolicRep { v }).collect())
}

/// The families named in the text, built from generator words applied to P0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    I2_1,
    I3_1,
    I3_2,
    I2_2,
    I8,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [
        FamilyName::I2_1,
        FamilyName::I3_1,
        FamilyName::I3_2,
        FamilyName::I2_2,
        FamilyName::I8,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::I2_1 => "I2_1",
            FamilyName::I3_1 => "I3_1",
            FamilyName::I3_2 => "I3_2",
            FamilyName::I2_2 => "I2_2",
            FamilyName::I8 => "I8",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyName> {
        FamilyName::ALL.iter().copied().find(|n| n.as_str() == s)
    }

    fn words(&self) -> &'static [&'static str] {
        match self {
            FamilyName::I2_1 => &["", "w"],
            FamilyName::I3_1 => &["", "w", "tau*w"],
            FamilyName::I3_2 => &["", "w", "sigma*w"],
            FamilyName::I2_2 => &["", "xi"],
            FamilyName::I8 => &[
                "",
                "w",
                "w*tau*sigma*w",
                "tau^-1*sigma*w",
                "tau*sigmacheck*w",
                "tau*w*tau*sigma*w",
                "tau^2*sigmacheck*sigma*w",
                "eps*w*xi^4*w",
            ],
        }
    }
}

pub fn named_family(name: FamilyName) -> ParabolicFamily {
    let base = ParabolicRep::base();
    let reps = name
        .words()
        .iter()
        .map(|wd| {
            let g = parse_word(wd).expect("catalog word");
            apply_gamma(&g, &base)
        })
        .collect();
    ParabolicFamily::new(reps)
}

// Fixed optimizer seeds (y, Re beta, Im beta, r). Together with the caller's
// init they cover the basins of all five named contact points.
const CONTACT_SEEDS: [[f64; 4]; 5] = [
    [1.0, 0.0, 0.3, 0.0],
    [0.8, 0.2, 0.5, 0.3],
    [1.2, -0.2, 0.7, -0.2],
    [0.9, 0.1, 0.9, 0.45],
    [0.75, 0.4, 0.4, 0.1],
];

const CONTACT_RESTARTS: u32 = 8;
const CONTACT_AGREEMENT: f64 = 1e-6;

/// The first contact point of an admissible family: the maximizer of
/// z -> min_{P in fam} f_P(z). Runs a restarted simplex chain from `init`
/// and from the fixed seeds, keeps the best, and demands that all family
/// heights agree there within 1e-6.
pub fn first_contact(fam: &ParabolicFamily, init: &HoroPoint) -> Result<HoroPoint> {
    first_contact_with_budget(fam, init, DEFAULT_OPTIMIZER_BUDGET)
}

pub fn first_contact_with_budget(
    fam: &ParabolicFamily,
    init: &HoroPoint,
    budget: u64,
) -> Result<HoroPoint> {
    if !is_strongly_admissible(fam) {
        return Err(Error::NotAdmissible);
    }
    let vectors: Vec<[Complex64; 3]> = fam.reps.iter().map(|p| p.v.to_complex()).collect();
    let objective = |x: &[f64]| -> f64 {
        let y = x[0];
        if y <= 1e-9 {
            return f64::NEG_INFINITY;
        }
        let z = HoroPoint::new(y, Complex64::new(x[1], x[2]), x[3]);
        vectors
            .iter()
            .map(|v| f_raw(v[0], v[1], v[2], &z))
            .fold(f64::INFINITY, f64::min)
    };

    let nm = NelderMead {
        max_evals: budget,
        ..NelderMead::default()
    };
    let mut starts: Vec<[f64; 4]> = vec![[init.y, init.beta.re, init.beta.im, init.r]];
    starts.extend_from_slice(&CONTACT_SEEDS);

    let mut best_x: Option<Vec<f64>> = None;
    let mut best_v = f64::NEG_INFINITY;
    for s in &starts {
        let res = nm.maximize(objective, s, CONTACT_RESTARTS);
        if res.value > best_v {
            best_v = res.value;
            best_x = Some(res.x);
        }
    }
    let x = best_x.ok_or(Error::NoConvergence)?;
    let z = HoroPoint::new(x[0], Complex64::new(x[1], x[2]), x[3]);
    let values: Vec<f64> = fam.reps.iter().map(|p| f_exhaustion(p, &z)).collect();
    let lo = values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let hi = values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let spread = hi - lo;
    if spread.is_nan() || spread > CONTACT_AGREEMENT || !best_v.is_finite() {
        return Err(Error::NoConvergence);
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{generator, GeneratorName};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rep(n: (i64, i64), p: (i64, i64), q: (i64, i64)) -> ParabolicRep {
        ParabolicRep::from_i64(n, p, q).unwrap()
    }

    #[test]
    fn rep_validation() {
        assert!(ParabolicRep::from_i64((1, 0), (0, 0), (0, 0)).is_ok());
        assert!(ParabolicRep::from_i64((2, 0), (0, 0), (0, 0)).is_err()); // not primitive
        assert!(ParabolicRep::from_i64((1, 0), (1, 0), (0, 0)).is_err()); // not isotropic
        assert!(ParabolicRep::from_i64((0, 0), (0, 0), (0, 0)).is_err());
        // canonicalization: -i*(1,0,1) parses back to (1,0,1)
        assert_eq!(rep((0, -1), (0, 0), (0, -1)), rep((1, 0), (0, 0), (1, 0)));
    }

    #[test]
    fn f_spec_examples() {
        let p0 = ParabolicRep::base();
        for z in [
            HoroPoint::new(0.7, c(0.3, -0.4), 0.2),
            HoroPoint::new(2.5, c(0.0, 0.0), -1.0),
        ] {
            assert_eq!(f_exhaustion(&p0, &z), z.y);
        }
        let pw = rep((0, 0), (0, 0), (1, 0));
        let z = HoroPoint::new(1.0, c(0.0, 0.0), 0.0);
        assert!((f_exhaustion(&pw, &z) - 1.0).abs() < 1e-15);
        let ptw = rep((1, 0), (0, 0), (1, 0));
        let y5 = (3.0f64 / 4.0).powf(0.25);
        let z5 = HoroPoint::new(y5, c(0.0, 0.0), 0.5);
        assert!((f_exhaustion(&ptw, &z5) - y5).abs() < 1e-12);
    }

    #[test]
    fn apply_gamma_examples() {
        let p0 = ParabolicRep::base();
        let w = generator(GeneratorName::W);
        let tau = generator(GeneratorName::Tau);
        assert_eq!(apply_gamma(&w, &p0), rep((0, 0), (0, 0), (1, 0)));
        assert_eq!(
            apply_gamma(&tau, &rep((0, 0), (0, 0), (1, 0))),
            rep((1, 0), (0, 0), (1, 0))
        );
        assert_eq!(apply_gamma(&GMatrix::identity(), &p0), p0);
    }

    #[test]
    fn pairing_examples() {
        let p0 = ParabolicRep::base();
        let pw = rep((0, 0), (0, 0), (1, 0));
        let ptw = rep((1, 0), (0, 0), (1, 0));
        assert_eq!(pairing_norm(&p0, &pw), BigInt::from(1));
        assert_eq!(pairing_norm(&p0, &ptw), BigInt::from(1));
        assert_eq!(pairing_norm(&p0, &p0), BigInt::from(0));
        assert!(pairing_norm(&pw, &ptw) > BigInt::from(0));
    }

    #[test]
    fn named_families_admissible() {
        for name in [
            FamilyName::I2_1,
            FamilyName::I3_1,
            FamilyName::I3_2,
            FamilyName::I2_2,
        ] {
            let fam = named_family(name);
            assert!(fam.len() <= 5);
            assert!(is_strongly_admissible(&fam), "{name:?}");
            let max = fam
                .reps()
                .iter()
                .enumerate()
                .flat_map(|(k, p)| fam.reps()[k + 1..].iter().map(move |q| pairing_norm(p, q)))
                .max()
                .unwrap();
            assert!(max <= BigInt::from(2), "{name:?}: {max}");
        }
        let i8fam = named_family(FamilyName::I8);
        assert_eq!(i8fam.len(), 8);
        assert!(is_strongly_admissible(&i8fam));
        let max = i8fam
            .reps()
            .iter()
            .enumerate()
            .flat_map(|(k, p)| i8fam.reps()[k + 1..].iter().map(move |q| pairing_norm(p, q)))
            .max()
            .unwrap();
        assert!(max <= BigInt::from(4), "I8 pairing max {max}");
    }

    #[test]
    fn six_element_family_not_admissible() {
        let all = enumerate_isotropic(2).unwrap();
        let fam = ParabolicFamily::new(all.into_iter().take(6).collect());
        assert_eq!(fam.len(), 6);
        assert!(!is_strongly_admissible(&fam));
    }

    #[test]
    fn argmax_examples() {
        let high = HoroPoint::new(2.0, c(0.0, 0.0), 0.0);
        let fam = argmax_parabolics(&high, 1e-9).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam.contains(&ParabolicRep::base()));

        let d6 = HoroPoint::new(1.0, c(0.0, 0.0), 0.0);
        let fam = argmax_parabolics(&d6, 1e-9).unwrap();
        assert!(fam.contains(&ParabolicRep::base()));
        assert!(fam.contains(&rep((0, 0), (0, 0), (1, 0))));

        let d5 = HoroPoint::new((3.0f64 / 4.0).powf(0.25), c(0.0, 0.0), 0.5);
        let fam = argmax_parabolics(&d5, 1e-6).unwrap();
        for v in [
            ParabolicRep::base(),
            rep((0, 0), (0, 0), (1, 0)),
            rep((1, 0), (0, 0), (1, 0)),
        ] {
            assert!(fam.contains(&v), "missing {v}");
        }
    }

    #[test]
    fn spine_examples() {
        assert!(!in_spine(&HoroPoint::new(2.0, c(0.0, 0.0), 0.0), 1e-6));
        assert!(in_spine(&HoroPoint::new(1.0, c(0.0, 0.0), 0.0), 1e-6));
        assert!(in_spine(
            &HoroPoint::new((3.0f64 / 4.0).powf(0.25), c(0.0, 0.0), 0.5),
            1e-6
        ));
        assert!(in_spine(
            &HoroPoint::new(0.5f64.powf(0.25), c(0.0, 1.0), 0.5),
            1e-6
        ));
    }

    #[test]
    fn enumerate_heights() {
        let h1 = enumerate_isotropic(1).unwrap();
        for v in [
            rep((1, 0), (0, 0), (0, 0)),
            rep((0, 0), (0, 0), (1, 0)),
            rep((1, 0), (0, 0), (1, 0)),
        ] {
            assert!(h1.contains(&v), "missing {v}");
        }
        assert_eq!(h1.len(), 4);
        assert_eq!(enumerate_isotropic(2).unwrap().len(), 24);
        assert_eq!(enumerate_isotropic(4).unwrap().len(), 36);
        // sorted, deduped
        let h4 = enumerate_isotropic(4).unwrap();
        assert!(h4.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn first_contact_small_families() {
        let d6 = first_contact(
            &named_family(FamilyName::I2_1),
            &HoroPoint::new(1.1, c(0.1, 0.1), 0.1),
        )
        .unwrap();
        assert!(d6.dist(&HoroPoint::new(1.0, c(0.0, 0.0), 0.0)) < 1e-6, "{d6:?}");

        let d5 = first_contact(
            &named_family(FamilyName::I3_1),
            &HoroPoint::new(1.0, c(0.0, 0.0), 0.4),
        )
        .unwrap();
        let want = HoroPoint::new((3.0f64 / 4.0).powf(0.25), c(0.0, 0.0), 0.5);
        assert!(d5.dist(&want) < 1e-6, "{d5:?}");
    }

    #[test]
    fn non_admissible_family_rejected() {
        let all = enumerate_isotropic(2).unwrap();
        let fam = ParabolicFamily::new(all.into_iter().take(6).collect());
        let init = HoroPoint::new(1.0, c(0.0, 0.0), 0.0);
        assert!(matches!(
            first_contact(&fam, &init),
            Err(Error::NotAdmissible)
        ));
    }

    #[test]
    fn family_file_roundtrip() {
        let text = "1,0,0\n0,0,1\n# comment\n\n1,0,1\n";
        let fam = ParabolicFamily::parse_file_contents(text).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(ParabolicFamily::parse_file_contents("2,0,0").is_err());
        assert!(ParabolicFamily::parse_file_contents("\n# only\n").is_err());
    }

    #[test]
    fn gamma_invariance_spot() {
        let g = parse_word("sigma*eps*w*tau^-1").unwrap();
        let ginv = g.inverse().unwrap();
        let z = HoroPoint::new(0.9, c(0.25, -0.35), 0.15);
        for p in enumerate_isotropic(2).unwrap().iter().take(8) {
            let lhs = f_exhaustion(&apply_gamma(&g, p), &z);
            let rhs = f_exhaustion(p, &crate::horoball::act(&ginv, &z).unwrap());
            assert!((lhs - rhs).abs() < 1e-9, "{p}");
        }
    }
}
