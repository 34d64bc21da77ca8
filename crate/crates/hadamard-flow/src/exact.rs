//! Exact representation of matrices whose entries are roots of unity times
//! exponentials of integer-linear parameter forms, and exact verification
//! that an affine family is Hadamard for every parameter value.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{reduce_root_sum, MAX_ORDER};
use crate::error::{Error, Result};
use crate::phase::{validate_perm, PhaseVector};
use crate::precision::Precision;
use crate::real::{two_pi, Real};

pub type Ratio = BigRational;

fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Reduce a rational to the fundamental interval [0, 1).
fn mod_one(q: &Ratio) -> Ratio {
    let f = q.floor();
    q - f
}

/// Entry phase of an exact matrix: e^{2 pi i q} * e^{i (m . a)} with q a
/// reduced rational in [0, 1) and m an integer coefficient per named
/// parameter (zero coefficients omitted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPhase {
    base: Ratio,
    linear: BTreeMap<String, i64>,
}

impl ExactPhase {
    pub fn new(base: Ratio, linear: BTreeMap<String, i64>) -> Self {
        let linear = linear.into_iter().filter(|(_, c)| *c != 0).collect();
        ExactPhase {
            base: mod_one(&base),
            linear,
        }
    }

    /// Constant phase 2 pi num/den.
    pub fn constant(num: i64, den: i64) -> Self {
        Self::new(ratio(num, den), BTreeMap::new())
    }

    pub fn zero() -> Self {
        Self::constant(0, 1)
    }

    /// Phase 2 pi num/den plus coeff * param.
    pub fn with_param(num: i64, den: i64, param: &str, coeff: i64) -> Self {
        let mut linear = BTreeMap::new();
        linear.insert(param.to_string(), coeff);
        Self::new(ratio(num, den), linear)
    }

    pub fn base(&self) -> &Ratio {
        &self.base
    }

    pub fn linear(&self) -> &BTreeMap<String, i64> {
        &self.linear
    }

    pub fn is_constant(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.linear.is_empty()
    }

    /// Phase of the complex conjugate.
    pub fn conj(&self) -> Self {
        let linear = self.linear.iter().map(|(k, c)| (k.clone(), -c)).collect();
        ExactPhase::new(-self.base.clone(), linear)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut linear = self.linear.clone();
        for (k, c) in &other.linear {
            *linear.entry(k.clone()).or_insert(0) += c;
        }
        ExactPhase::new(self.base.clone() + other.base.clone(), linear)
    }

    /// Add coeff * param to this phase.
    pub fn shift_param(&self, param: &str, coeff: i64) -> Self {
        let mut linear = self.linear.clone();
        *linear.entry(param.to_string()).or_insert(0) += coeff;
        ExactPhase::new(self.base.clone(), linear)
    }

    /// Frequency vector over an ordered parameter list.
    fn frequency(&self, params: &[String]) -> Vec<i64> {
        params
            .iter()
            .map(|p| self.linear.get(p).copied().unwrap_or(0))
            .collect()
    }

    /// Numeric value 2 pi q + sum coeff * assignment(param).
    pub fn eval<R: Real>(&self, assignment: &BTreeMap<String, R>, prec: Precision) -> Result<R> {
        let tau: R = two_pi(prec);
        let mut acc = tau * R::from_big_ratio(&self.base, prec);
        for (name, coeff) in &self.linear {
            let a = assignment
                .get(name)
                .ok_or_else(|| Error::MissingParameter(name.clone()))?;
            acc = acc + R::from_i64(*coeff, prec) * a.clone();
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    q: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    lin: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize)]
pub struct ExactAffineMatrixJson {
    pub d: usize,
    pub params: Vec<String>,
    entries: Vec<Vec<EntryJson>>,
}

/// Dephased matrix with exact entry phases, affine in named parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactAffineMatrix {
    d: usize,
    params: Vec<String>,
    entries: Vec<ExactPhase>,
}

impl ExactAffineMatrix {
    /// Build from a row-major grid of entry phases. The first row and column
    /// must be exactly zero (dephased form); parameters are collected in
    /// first-appearance order unless `params` lists them explicitly.
    pub fn new(d: usize, entries: Vec<ExactPhase>, params: Option<Vec<String>>) -> Result<Self> {
        if d < 2 || entries.len() != d * d {
            return Err(Error::InvalidInput(format!(
                "exact matrix needs {} entries for d={d}, got {}",
                d * d,
                entries.len()
            )));
        }
        for j in 0..d {
            if !entries[j].is_zero() {
                return Err(Error::InvalidInput(format!(
                    "entry (0,{j}) must be the constant 1 in dephased form"
                )));
            }
        }
        for i in 1..d {
            if !entries[i * d].is_zero() {
                return Err(Error::InvalidInput(format!(
                    "entry ({i},0) must be the constant 1 in dephased form"
                )));
            }
        }
        let mut seen: Vec<String> = Vec::new();
        for e in &entries {
            for name in e.linear.keys() {
                if !seen.contains(name) {
                    seen.push(name.clone());
                }
            }
        }
        let params = match params {
            Some(p) => {
                for name in &seen {
                    if !p.contains(name) {
                        return Err(Error::InvalidInput(format!(
                            "parameter '{name}' appears in entries but not in the parameter list"
                        )));
                    }
                }
                p
            }
            None => seen,
        };
        Ok(ExactAffineMatrix { d, params, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactPhase {
        &self.entries[i * self.d + j]
    }

    /// Hermitian inner product of row i against row j, expanded and grouped
    /// by parameter frequency vector:
    ///
    ///   <row_i, row_j> = sum_k conj(M[i][k]) M[j][k]
    ///                  = sum over frequencies m of e^{i m . a} * (sum of
    ///                    constant root-of-unity phases in that class).
    ///
    /// The matrix is Hadamard for all parameter values iff every class sums
    /// to zero, for every i != j.
    pub fn gram_terms(&self, i: usize, j: usize) -> Result<FrequencyTable> {
        if i == j {
            return Err(Error::InvalidInput(
                "gram_terms requires two distinct rows".into(),
            ));
        }
        if i >= self.d || j >= self.d {
            return Err(Error::InvalidInput(format!(
                "row indices ({i},{j}) out of range for d={}",
                self.d
            )));
        }
        let mut groups: BTreeMap<Vec<i64>, Vec<Ratio>> = BTreeMap::new();
        for k in 0..self.d {
            let term = self.entry(i, k).conj().add(self.entry(j, k));
            groups
                .entry(term.frequency(&self.params))
                .or_default()
                .push(term.base.clone());
        }
        for phases in groups.values_mut() {
            phases.sort();
        }
        Ok(FrequencyTable {
            params: self.params.clone(),
            groups,
        })
    }

    /// Exact verdict: true iff the matrix is Hadamard for every value of the
    /// parameters. Each frequency class of each distinct row pair must be a
    /// vanishing sum of roots of unity in Z[zeta_N], tested by reduction
    /// modulo the N-th cyclotomic polynomial. No floating arithmetic is
    /// involved in the verdict.
    pub fn verify_affine_family(&self) -> Result<FamilyVerdict> {
        let mut pairs = Vec::new();
        let mut verdict = true;
        for i in 0..self.d {
            for j in (i + 1)..self.d {
                let table = self.gram_terms(i, j)?;
                for (freq, phases) in &table.groups {
                    let (order, reduced) = reduce_phase_sum(phases)?;
                    let vanishes = reduced.iter().all(Zero::is_zero);
                    verdict &= vanishes;
                    pairs.push(PairReduction {
                        row_i: i,
                        row_j: j,
                        frequency: freq.clone(),
                        order,
                        reduced,
                        vanishes,
                    });
                }
            }
        }
        Ok(FamilyVerdict { verdict, pairs })
    }

    /// Numeric core phases at a full parameter assignment.
    pub fn to_phase_vector<R: Real>(
        &self,
        assignment: &BTreeMap<String, R>,
        prec: Precision,
    ) -> Result<PhaseVector<R>> {
        let mut theta = Vec::with_capacity((self.d - 1) * (self.d - 1));
        for i in 1..self.d {
            for j in 1..self.d {
                theta.push(self.entry(i, j).eval(assignment, prec)?);
            }
        }
        PhaseVector::new(self.d, theta)
    }

    /// Substitute zero for the given parameters, dropping them.
    pub fn with_params_zeroed(&self, names: &[&str]) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let linear = e
                    .linear
                    .iter()
                    .filter(|(k, _)| !names.contains(&k.as_str()))
                    .map(|(k, c)| (k.clone(), *c))
                    .collect();
                ExactPhase::new(e.base.clone(), linear)
            })
            .collect();
        let params = self
            .params
            .iter()
            .filter(|p| !names.contains(&p.as_str()))
            .cloned()
            .collect();
        ExactAffineMatrix {
            d: self.d,
            params,
            entries,
        }
    }

    /// Exact core permutation: M'[i][j] = M[row_perm[i]][col_perm[j]].
    pub fn permute_core(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        validate_perm(row_perm, self.d, "row")?;
        validate_perm(col_perm, self.d, "column")?;
        let mut entries = Vec::with_capacity(self.d * self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                entries.push(self.entry(row_perm[i], col_perm[j]).clone());
            }
        }
        Ok(ExactAffineMatrix {
            d: self.d,
            params: self.params.clone(),
            entries,
        })
    }

    pub fn to_json(&self) -> ExactAffineMatrixJson {
        ExactAffineMatrixJson {
            d: self.d,
            params: self.params.clone(),
            entries: (0..self.d)
                .map(|i| {
                    (0..self.d)
                        .map(|j| {
                            let e = self.entry(i, j);
                            EntryJson {
                                q: format!("{}/{}", e.base.numer(), e.base.denom()),
                                lin: e.linear.iter().map(|(k, c)| (k.clone(), *c)).collect(),
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }

    pub fn from_json(json: &ExactAffineMatrixJson) -> Result<Self> {
        let mut entries = Vec::with_capacity(json.d * json.d);
        if json.entries.len() != json.d {
            return Err(Error::InvalidInput("entry grid has wrong row count".into()));
        }
        for row in &json.entries {
            if row.len() != json.d {
                return Err(Error::InvalidInput("entry grid has a ragged row".into()));
            }
            for e in row {
                entries.push(ExactPhase::new(parse_ratio(&e.q)?, e.lin.clone()));
            }
        }
        Self::new(json.d, entries, Some(json.params.clone()))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

fn parse_ratio(s: &str) -> Result<Ratio> {
    let bad = |_| Error::InvalidInput(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let num: BigInt = n.trim().parse().map_err(bad)?;
            let den: BigInt = d.trim().parse().map_err(bad)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
            }
            Ok(Ratio::new(num, den))
        }
        None => {
            let num: BigInt = s.trim().parse().map_err(bad)?;
            Ok(Ratio::from_integer(num))
        }
    }
}

/// Inner-product terms grouped by parameter frequency vector.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    pub params: Vec<String>,
    /// frequency vector -> constant phases (reduced rationals in [0,1)),
    /// one per matrix column that lands in this class.
    pub groups: BTreeMap<Vec<i64>, Vec<Ratio>>,
}

impl FrequencyTable {
    pub fn total_terms(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }
}

/// Reduction of one frequency class over Z[zeta_N], N = lcm of phase
/// denominators.
#[derive(Clone, Debug, Serialize)]
pub struct PairReduction {
    pub row_i: usize,
    pub row_j: usize,
    pub frequency: Vec<i64>,
    pub order: u64,
    #[serde(serialize_with = "serialize_bigints")]
    pub reduced: Vec<BigInt>,
    pub vanishes: bool,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Verdict plus the per-(pair, frequency) cyclotomic reductions that
/// certify it.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerdict {
    pub verdict: bool,
    pub pairs: Vec<PairReduction>,
}

impl FamilyVerdict {
    /// First non-vanishing class, if any.
    pub fn first_failure(&self) -> Option<&PairReduction> {
        self.pairs.iter().find(|p| !p.vanishes)
    }
}

/// Express the phases as powers of a common root of unity and reduce.
fn reduce_phase_sum(phases: &[Ratio]) -> Result<(u64, Vec<BigInt>)> {
    let mut lcm = BigInt::one();
    for q in phases {
        lcm = lcm.lcm(q.denom());
    }
    let n = u64::try_from(&lcm).map_err(|_| Error::CyclotomicOverflow {
        n: u64::MAX,
        bound: MAX_ORDER,
    })?;
    if n > MAX_ORDER {
        return Err(Error::CyclotomicOverflow { n, bound: MAX_ORDER });
    }
    let terms: Vec<(u64, BigInt)> = phases
        .iter()
        .map(|q| {
            let e = (q * &lcm).to_integer();
            debug_assert!(!e.is_negative());
            (u64::try_from(&e).expect("reduced phase"), BigInt::one())
        })
        .collect();
    let reduced = reduce_root_sum(n, &terms)?;
    Ok((n, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::potential;

    /// The one-parameter order-4 family: rows of phases in quarters with the
    /// parameter entering rows 2 and 4.
    fn f4(coeff_sign: i64) -> ExactAffineMatrix {
        let z = ExactPhase::zero;
        let c = ExactPhase::constant;
        let p = |num: i64| ExactPhase::with_param(num, 4, "a", coeff_sign);
        let entries = vec![
            z(), z(), z(), z(),
            z(), p(1), c(1, 2), p(3),
            z(), c(1, 2), c(0, 1), c(1, 2),
            z(), p(3), c(1, 2), p(1),
        ];
        ExactAffineMatrix::new(4, entries, None).unwrap()
    }

    #[test]
    fn gram_terms_f4_rows_0_1() {
        let m = f4(1);
        let t = m.gram_terms(0, 1).unwrap();
        assert_eq!(t.total_terms(), 4);
        let constant = t.groups.get(&vec![0]).unwrap();
        assert_eq!(constant, &vec![ratio(0, 1), ratio(1, 2)]);
        let moving = t.groups.get(&vec![1]).unwrap();
        assert_eq!(moving, &vec![ratio(1, 4), ratio(3, 4)]);
    }

    #[test]
    fn gram_terms_rejects_equal_rows() {
        assert!(f4(1).gram_terms(2, 2).is_err());
    }

    #[test]
    fn f4_family_verifies() {
        let v = f4(1).verify_affine_family().unwrap();
        assert!(v.verdict, "failure: {:?}", v.first_failure());
    }

    #[test]
    fn broken_family_fails_with_witness() {
        // flip one constant entry: (3,3) from phase 1/4 to 0
        let mut m = f4(1);
        let d = m.d;
        m.entries[3 * d + 3] = ExactPhase::with_param(0, 1, "a", 1);
        let v = m.verify_affine_family().unwrap();
        assert!(!v.verdict);
        assert!(v.first_failure().is_some());
    }

    #[test]
    fn verdict_invariant_under_core_permutation() {
        let m = f4(1);
        let perm = vec![0, 2, 1, 3];
        let id: Vec<usize> = (0..4).collect();
        let p = m.permute_core(&perm, &id).unwrap();
        assert!(p.verify_affine_family().unwrap().verdict);
    }

    #[test]
    fn to_phase_vector_matches_potential() {
        let m = f4(1);
        let mut asg = BTreeMap::new();
        asg.insert("a".to_string(), 0.7f64);
        let p = m.to_phase_vector(&asg, Precision::Machine).unwrap();
        assert!(potential(&p) < 1e-20);
    }

    #[test]
    fn to_phase_vector_missing_parameter() {
        let m = f4(1);
        let asg: BTreeMap<String, f64> = BTreeMap::new();
        assert!(matches!(
            m.to_phase_vector(&asg, Precision::Machine),
            Err(Error::MissingParameter(_))
        ));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = f4(-1);
        let s = m.to_json_string().unwrap();
        let back = ExactAffineMatrix::from_json_str(&s).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_non_dephased_input() {
        let mut entries = vec![ExactPhase::zero(); 4];
        entries[3] = ExactPhase::constant(1, 2);
        // 2x2 with a nonzero first-column phase
        let r = ExactAffineMatrix::new(2, vec![
            ExactPhase::zero(),
            ExactPhase::zero(),
            ExactPhase::constant(1, 4),
            ExactPhase::constant(1, 2),
        ], None);
        assert!(r.is_err());
    }

    #[test]
    fn zeroing_parameters_drops_them() {
        let m = f4(1);
        let z = m.with_params_zeroed(&["a"]);
        assert!(z.params().is_empty());
        assert_eq!(z.entry(1, 1), &ExactPhase::constant(1, 4));
    }
}
