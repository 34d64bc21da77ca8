//! Named matrices and affine families, stored with exact phases.
//!
//! Every entry phase is a rational multiple of 2 pi plus an integer-linear
//! form in the named parameters, so each entry can be verified Hadamard by
//! exact cyclotomic arithmetic and evaluated at any numeric precision.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactAffineMatrix, ExactPhase};
use crate::phase::PhaseVector;
use crate::real::Real;

#[derive(Clone, Debug, Serialize)]
pub struct EntryInfo {
    pub name: &'static str,
    pub provenance: &'static str,
    pub params: Vec<ParamRange>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamRange {
    pub name: String,
    pub range: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub info: EntryInfo,
    pub matrix: ExactAffineMatrix,
}

const FULL_TURN: &str = "[0, 2*pi)";

/// Build a zero-parameter matrix from a grid of phase numerators over a
/// common denominator.
fn constant_matrix(d: usize, den: i64, nums: &[&[i64]]) -> ExactAffineMatrix {
    assert_eq!(nums.len(), d);
    let mut entries = Vec::with_capacity(d * d);
    for row in nums {
        assert_eq!(row.len(), d);
        for &num in row.iter() {
            entries.push(ExactPhase::constant(num, den));
        }
    }
    ExactAffineMatrix::new(d, entries, None).expect("catalog grid")
}

/// Add `coeff * param` to the listed (row, col) positions (0-based).
fn with_param(
    m: &ExactAffineMatrix,
    param: &str,
    coeff: i64,
    positions: &[(usize, usize)],
) -> ExactAffineMatrix {
    let d = m.d();
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let e = m.entry(i, j).clone();
            if positions.contains(&(i, j)) {
                entries.push(e.shift_param(param, coeff));
            } else {
                entries.push(e);
            }
        }
    }
    let mut params: Vec<String> = m.params().to_vec();
    if !params.iter().any(|p| p == param) {
        params.push(param.to_string());
    }
    ExactAffineMatrix::new(d, entries, Some(params)).expect("catalog param grid")
}

/// Add `param` with per-entry integer coefficients taken from a core vector
/// (length (d-1)^2, row-major over the core).
pub fn with_core_direction(
    m: &ExactAffineMatrix,
    param: &str,
    core: &[i64],
) -> ExactAffineMatrix {
    let d = m.d();
    assert_eq!(core.len(), (d - 1) * (d - 1));
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let e = m.entry(i, j).clone();
            if i >= 1 && j >= 1 {
                let c = core[(i - 1) * (d - 1) + (j - 1)];
                if c != 0 {
                    entries.push(e.shift_param(param, c));
                    continue;
                }
            }
            entries.push(e);
        }
    }
    let mut params: Vec<String> = m.params().to_vec();
    if !params.iter().any(|p| p == param) {
        params.push(param.to_string());
    }
    ExactAffineMatrix::new(d, entries, Some(params)).expect("catalog direction grid")
}

/// Core vector with +1/-1 at the listed 1-based coordinates.
fn signed_core_vector(len: usize, plus: &[usize], minus: &[usize]) -> Vec<i64> {
    let mut v = vec![0i64; len];
    for &p in plus {
        v[p - 1] = 1;
    }
    for &m in minus {
        v[m - 1] = -1;
    }
    v
}

// --- order 4 ---------------------------------------------------------------

/// The one-parameter order-4 family: core entries (1,1), (1,3), (3,1), (3,3)
/// carry the parameter on top of quarter phases.
fn f4_1() -> ExactAffineMatrix {
    let base = constant_matrix(
        4,
        4,
        &[
            &[0, 0, 0, 0],
            &[0, 1, 2, 3],
            &[0, 2, 0, 2],
            &[0, 3, 2, 1],
        ],
    );
    with_param(&base, "a", 1, &[(1, 1), (1, 3), (3, 1), (3, 3)])
}

/// Core phases of the order-4 family member at parameter `a`:
/// [a+pi/2, pi, a-pi/2, pi, 0, pi, a-pi/2, pi, a+pi/2].
pub fn f4_core_phases<R: Real>(a: &R) -> PhaseVector<R> {
    let prec = a.precision();
    let pi = R::pi(prec);
    let half = pi.clone() / R::from_i64(2, prec);
    let zero = R::zero(prec);
    let theta = vec![
        a.clone() + half.clone(),
        pi.clone(),
        a.clone() - half.clone(),
        pi.clone(),
        zero,
        pi.clone(),
        a.clone() - half.clone(),
        pi.clone(),
        a.clone() + half,
    ];
    PhaseVector::new(4, theta).expect("9 phases")
}

/// Kernel directions of the linearized flow at the real order-4 point
/// (parameter pi/2): the family tangent and its two core-permutation images.
pub fn f4_center_vectors() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 1, 0, 0, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 1, 0, 1, 1, 0],
        vec![0, 1, 1, 0, 1, 1, 0, 0, 0],
    ]
}

// --- order 6 ---------------------------------------------------------------

fn fourier(d: usize) -> ExactAffineMatrix {
    let den = d as i64;
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| ((i * j) % d) as i64).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    constant_matrix(d, den, &refs)
}

const F6_A_POSITIONS: [(usize, usize); 6] = [(1, 1), (1, 4), (3, 1), (3, 4), (5, 1), (5, 4)];
const F6_B_POSITIONS: [(usize, usize); 6] = [(1, 2), (1, 5), (3, 2), (3, 5), (5, 2), (5, 5)];

fn f6_2() -> ExactAffineMatrix {
    let m = with_param(&fourier(6), "a", 1, &F6_A_POSITIONS);
    with_param(&m, "b", 1, &F6_B_POSITIONS)
}

fn transpose_positions(p: &[(usize, usize)]) -> Vec<(usize, usize)> {
    p.iter().map(|&(i, j)| (j, i)).collect()
}

fn f6_2t() -> ExactAffineMatrix {
    let m = with_param(&fourier(6), "a", 1, &transpose_positions(&F6_A_POSITIONS));
    with_param(&m, "b", 1, &transpose_positions(&F6_B_POSITIONS))
}

fn d6() -> ExactAffineMatrix {
    constant_matrix(
        6,
        4,
        &[
            &[0, 0, 0, 0, 0, 0],
            &[0, 2, 1, 3, 3, 1],
            &[0, 1, 2, 1, 3, 3],
            &[0, 3, 1, 2, 1, 3],
            &[0, 3, 3, 1, 2, 1],
            &[0, 1, 3, 3, 1, 2],
        ],
    )
}

fn d6_1() -> ExactAffineMatrix {
    let m = with_param(&d6(), "c", 1, &[(2, 3), (2, 4), (5, 3), (5, 4)]);
    with_param(&m, "c", -1, &[(3, 2), (3, 5), (4, 2), (4, 5)])
}

/// Tangent of the order-6 affine family at its symmetric base point, in core
/// coordinates.
pub fn d6_family_tangent() -> Vec<i64> {
    signed_core_vector(25, &[8, 9, 23, 24], &[12, 15, 17, 20])
}

/// Kernel directions of the linearized flow at the order-6 Fourier matrix.
pub fn f6_center_vectors() -> Vec<Vec<i64>> {
    vec![
        vec![
            1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0,
        ],
        vec![
            0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1,
        ],
        vec![
            1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0,
        ],
        vec![
            0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1,
        ],
    ]
}

// --- order 9 ---------------------------------------------------------------

fn b9_0() -> ExactAffineMatrix {
    constant_matrix(
        9,
        10,
        &[
            &[0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 5, 3, 3, 5, 9, 8, 7, 1],
            &[0, 4, 5, 7, 1, 3, 5, 9, 9],
            &[0, 3, 7, 5, 1, 8, 9, 3, 5],
            &[0, 9, 1, 5, 5, 3, 7, 2, 7],
            &[0, 9, 5, 1, 3, 5, 1, 7, 6],
            &[0, 1, 7, 9, 6, 1, 5, 5, 3],
            &[0, 7, 9, 4, 9, 5, 3, 5, 1],
            &[0, 5, 2, 9, 7, 7, 3, 1, 5],
        ],
    )
}

// --- order 10 --------------------------------------------------------------

fn g10_1() -> ExactAffineMatrix {
    let base = constant_matrix(
        10,
        4,
        &[
            &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 1, 1, 0, 3, 2, 0, 3, 2, 2],
            &[0, 2, 3, 2, 0, 1, 3, 0, 2, 1],
            &[0, 1, 3, 3, 1, 3, 1, 2, 2, 0],
            &[0, 0, 1, 2, 1, 1, 2, 3, 3, 3],
            &[0, 3, 2, 0, 0, 2, 2, 2, 0, 1],
            &[0, 1, 0, 2, 3, 3, 2, 1, 0, 2],
            &[0, 2, 3, 1, 2, 1, 0, 2, 0, 3],
            &[0, 3, 1, 1, 2, 3, 3, 1, 2, 0],
            &[0, 3, 2, 3, 2, 0, 1, 0, 1, 2],
        ],
    );
    let a_mask: &[(usize, usize)] = &[
        (1, 1), (1, 2), (1, 3), (1, 4), (1, 6), (1, 7), (1, 8), (1, 9),
        (2, 2), (2, 3), (2, 4), (2, 7), (2, 8), (2, 9),
        (3, 3), (3, 4), (3, 8), (3, 9),
        (4, 4), (4, 9),
        (5, 1), (5, 2), (5, 3), (5, 4), (5, 6), (5, 7), (5, 8), (5, 9),
        (6, 2), (6, 3), (6, 4), (6, 7), (6, 8), (6, 9),
        (7, 3), (7, 4), (7, 8), (7, 9),
        (8, 4), (8, 9),
    ];
    with_param(&base, "a", 1, a_mask)
}

fn g10_0() -> ExactAffineMatrix {
    g10_1().with_params_zeroed(&["a"])
}

/// Kernel direction of the linearized flow at G10(0) generating the first
/// new affine family; given as (row, col, sign) over the full matrix.
const V_DIRECTION: &[(usize, usize, i64)] = &[
    (1, 1, -1), (1, 3, -1), (1, 4, -1), (1, 9, -1),
    (2, 3, -1), (2, 4, -1),
    (3, 3, -1), (3, 4, -1),
    (4, 2, 1), (4, 7, 1),
    (6, 2, 1), (6, 5, 1), (6, 6, 1), (6, 7, 1),
    (7, 2, 1), (7, 5, 1), (7, 6, 1), (7, 7, 1),
    (8, 1, -1), (8, 3, -1), (8, 4, -1), (8, 9, -1),
    (9, 2, 1), (9, 7, 1),
];

const U_DIRECTION: &[(usize, usize, i64)] = &[
    (2, 3, 1), (2, 4, 1), (2, 6, 1), (2, 7, 1), (2, 8, 1), (2, 9, 1),
    (3, 3, 1), (3, 6, 1),
    (5, 3, 1), (5, 6, 1),
    (7, 3, 1), (7, 4, 1), (7, 6, 1), (7, 7, 1), (7, 8, 1), (7, 9, 1),
    (8, 3, 1), (8, 6, 1),
    (9, 3, 1), (9, 6, 1),
];

const W_DIRECTION: &[(usize, usize, i64)] = &[
    (1, 2, 1), (1, 3, 1), (1, 5, 1), (1, 6, 1), (1, 7, 1), (1, 8, 1),
    (2, 2, 1), (2, 5, 1),
    (6, 2, 1), (6, 3, 1), (6, 5, 1), (6, 6, 1), (6, 7, 1), (6, 8, 1),
    (7, 2, 1), (7, 5, 1),
    (8, 2, 1), (8, 5, 1),
    (9, 2, 1), (9, 5, 1),
];

fn direction_to_core(d: usize, dir: &[(usize, usize, i64)]) -> Vec<i64> {
    let mut core = vec![0i64; (d - 1) * (d - 1)];
    for &(i, j, s) in dir {
        assert!(i >= 1 && j >= 1);
        core[(i - 1) * (d - 1) + (j - 1)] = s;
    }
    core
}

/// The three kernel directions at G10(0) used to build the new families.
pub fn g10_kernel_directions() -> (Vec<i64>, Vec<i64>, Vec<i64>) {
    (
        direction_to_core(10, V_DIRECTION),
        direction_to_core(10, U_DIRECTION),
        direction_to_core(10, W_DIRECTION),
    )
}

fn m10_1() -> ExactAffineMatrix {
    let (v, _, _) = g10_kernel_directions();
    with_core_direction(&g10_0(), "a", &v)
}

fn m10_2() -> ExactAffineMatrix {
    let (_, u, w) = g10_kernel_directions();
    let m = with_core_direction(&g10_0(), "a", &u);
    with_core_direction(&m, "b", &w)
}

fn d10() -> ExactAffineMatrix {
    constant_matrix(
        10,
        4,
        &[
            &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 2, 3, 3, 3, 3, 1, 1, 1, 1],
            &[0, 3, 2, 1, 1, 3, 3, 3, 1, 1],
            &[0, 3, 1, 2, 3, 1, 3, 1, 3, 1],
            &[0, 3, 1, 3, 2, 1, 1, 3, 1, 3],
            &[0, 3, 3, 1, 1, 2, 1, 1, 3, 3],
            &[0, 1, 3, 3, 1, 1, 2, 3, 3, 1],
            &[0, 1, 3, 1, 3, 1, 3, 2, 1, 3],
            &[0, 1, 1, 3, 1, 3, 3, 1, 2, 3],
            &[0, 1, 1, 1, 3, 3, 1, 3, 3, 2],
        ],
    )
}

/// Sixteen integer kernel directions at the order-10 non-symmetric matrix,
/// each generating a one-parameter affine family. Coordinates are 1-based
/// positions in the 81-long core vector; every nonzero entry is +1 or -1.
const D10_BASIS_TABLE: [([usize; 8], [usize; 8]); 16] = [
    ([2, 3, 7, 8, 74, 75, 79, 80], [10, 18, 19, 27, 55, 63, 64, 72]),
    ([10, 12, 16, 18, 64, 66, 70, 72], [2, 8, 20, 26, 56, 62, 74, 80]),
    ([28, 29, 35, 36, 46, 47, 53, 54], [4, 6, 13, 15, 67, 69, 76, 78]),
    ([4, 8, 24, 25, 40, 44, 78, 79], [28, 32, 48, 54, 57, 63, 64, 68]),
    ([37, 40, 47, 54, 55, 58, 65, 72], [5, 7, 15, 17, 32, 34, 78, 80]),
    ([4, 9, 12, 14, 48, 50, 67, 72], [20, 24, 28, 35, 38, 42, 73, 80]),
    ([19, 27, 29, 34, 38, 43, 64, 72], [3, 8, 13, 14, 58, 59, 75, 80]),
    ([37, 39, 43, 45, 46, 48, 52, 54], [5, 6, 23, 24, 59, 60, 77, 78]),
    ([2, 8, 20, 26, 43, 45, 52, 54], [10, 12, 59, 60, 64, 66, 77, 78]),
    ([47, 48, 49, 50, 74, 75, 76, 77], [15, 18, 24, 27, 33, 36, 42, 45]),
    ([2, 6, 30, 32, 65, 69, 75, 77], [10, 17, 22, 27, 40, 45, 46, 53]),
    ([12, 14, 30, 32, 48, 50, 75, 77], [20, 22, 24, 27, 38, 40, 42, 45]),
    ([47, 50, 56, 59, 65, 68, 74, 77], [15, 16, 17, 18, 42, 43, 44, 45]),
    ([25, 26, 34, 35, 47, 50, 74, 77], [15, 18, 42, 45, 57, 58, 66, 67]),
    ([19, 23, 28, 32, 64, 68, 73, 77], [3, 4, 8, 9, 39, 40, 44, 45]),
    ([19, 23, 49, 53, 58, 62, 73, 77], [3, 9, 33, 34, 39, 45, 69, 70]),
];

/// The sixteen-vector integer kernel basis at the order-10 matrix.
pub fn d10_kernel_basis() -> Vec<Vec<i64>> {
    D10_BASIS_TABLE
        .iter()
        .map(|(plus, minus)| signed_core_vector(81, plus, minus))
        .collect()
}

fn d10_3() -> ExactAffineMatrix {
    let basis = d10_kernel_basis();
    let m = with_core_direction(&d10(), "a", &basis[0]);
    let m = with_core_direction(&m, "b", &basis[1]);
    with_core_direction(&m, "c", &basis[2])
}

// --- lookup ----------------------------------------------------------------

pub const NAMES: [&str; 12] = [
    "F4_1", "F6", "F6_2", "F6_2T", "D6", "D6_1", "B9_0", "G10_1", "M10_1", "M10_2", "D10",
    "D10_3",
];

fn describe(name: &str) -> &'static str {
    match name {
        "F4_1" => "one-parameter family covering all order-4 complex Hadamards",
        "F6" => "order-6 Fourier matrix",
        "F6_2" => "two-parameter affine orbit through the order-6 Fourier matrix",
        "F6_2T" => "transposed two-parameter affine orbit through the order-6 Fourier matrix",
        "D6" => "symmetric order-6 matrix of Dita",
        "D6_1" => "one-parameter affine family of Dita",
        "B9_0" => "order-9 matrix of Beauchamp and Nicoara, defect 2",
        "G10_1" => "order-10 Golay-sequence family of Lampio, Ostergard and Szollosi",
        "M10_1" => "one-parameter affine family through G10(0) from a kernel direction",
        "M10_2" => "two-parameter affine family through G10(0) from two kernel directions",
        "D10" => "non-Dita-type order-10 matrix of Szollosi",
        "D10_3" => "three-parameter affine family through the order-10 matrix of Szollosi",
        _ => unreachable!(),
    }
}

fn build(name: &str) -> Option<ExactAffineMatrix> {
    Some(match name {
        "F4_1" => f4_1(),
        "F6" => fourier(6),
        "F6_2" => f6_2(),
        "F6_2T" => f6_2t(),
        "D6" => d6(),
        "D6_1" => d6_1(),
        "B9_0" => b9_0(),
        "G10_1" => g10_1(),
        "M10_1" => m10_1(),
        "M10_2" => m10_2(),
        "D10" => d10(),
        "D10_3" => d10_3(),
        _ => return None,
    })
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let matrix = build(name).ok_or_else(|| Error::UnknownCatalogEntry {
        name: name.to_string(),
        available: NAMES.join(", "),
    })?;
    Ok(CatalogEntry {
        info: EntryInfo {
            name: NAMES.iter().find(|n| **n == name).copied().unwrap(),
            provenance: describe(name),
            params: matrix
                .params()
                .iter()
                .map(|p| ParamRange {
                    name: p.clone(),
                    range: FULL_TURN,
                })
                .collect(),
        },
        matrix,
    })
}

pub fn list() -> Vec<EntryInfo> {
    NAMES.iter().map(|n| get(n).unwrap().info).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactPhase;
    use crate::phase::{build_matrix, potential};
    use crate::precision::Precision;
    use std::collections::BTreeMap;

    #[test]
    fn every_listed_entry_loads() {
        for name in NAMES {
            let e = get(name).unwrap();
            assert_eq!(e.info.name, name);
        }
        assert_eq!(list().len(), 12);
    }

    #[test]
    fn unknown_name_lists_available_entries() {
        match get("NOPE") {
            Err(Error::UnknownCatalogEntry { available, .. }) => {
                assert!(available.contains("F4_1"));
                assert!(available.contains("D10_3"));
            }
            other => panic!("expected catalog error, got {other:?}"),
        }
    }

    #[test]
    fn f4_entry_1_1_is_quarter_plus_parameter() {
        let m = get("F4_1").unwrap().matrix;
        assert_eq!(m.entry(1, 1), &ExactPhase::with_param(1, 4, "a", 1));
    }

    #[test]
    fn b9_entry_1_2_is_three_tenths() {
        let m = get("B9_0").unwrap().matrix;
        assert_eq!(m.entry(1, 2), &ExactPhase::constant(3, 10));
    }

    #[test]
    fn d10_entry_1_1_is_half() {
        let m = get("D10").unwrap().matrix;
        assert_eq!(m.entry(1, 1), &ExactPhase::constant(1, 2));
    }

    #[test]
    fn f4_core_phases_match_entry_evaluation() {
        let a = 0.9f64;
        let direct = f4_core_phases(&a);
        let m = get("F4_1").unwrap().matrix;
        let mut asg = BTreeMap::new();
        asg.insert("a".into(), a);
        let via_matrix = m
            .to_phase_vector(&asg, Precision::Machine)
            .unwrap()
            .normalized();
        let direct = direct.normalized();
        for (x, y) in direct.theta().iter().zip(via_matrix.theta()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn f4_real_point_phases() {
        let p = f4_core_phases(&(std::f64::consts::PI / 2.0)).normalized();
        let pi = std::f64::consts::PI;
        let want = [pi, pi, 0.0, pi, 0.0, pi, 0.0, pi, pi];
        for (x, y) in p.theta().iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
        // the core representative with rows 2 and 4 swapped is the vector
        // [0, pi, pi, pi, 0, pi, pi, pi, 0]; it is the same family point at
        // parameter a + pi
        let q = f4_core_phases(&(3.0 * std::f64::consts::PI / 2.0)).normalized();
        let want_shifted = [0.0, pi, pi, pi, 0.0, pi, pi, pi, 0.0];
        for (x, y) in q.theta().iter().zip(want_shifted) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_parameter_members_are_numerically_hadamard() {
        for name in ["F6", "D6", "B9_0", "D10"] {
            let m = get(name).unwrap().matrix;
            let p = m
                .to_phase_vector(&BTreeMap::<String, f64>::new(), Precision::Machine)
                .unwrap();
            let v = potential(&p);
            assert!(v < 1e-20, "{name}: potential {v:e}");
            let h = build_matrix(&p);
            assert!(h.hadamard_residual() < 1e-10, "{name}");
        }
    }

    #[test]
    fn parameterized_members_are_numerically_hadamard_at_random_values() {
        for name in ["F4_1", "F6_2", "F6_2T", "D6_1", "G10_1", "M10_1", "M10_2", "D10_3"] {
            let m = get(name).unwrap().matrix;
            let mut asg = BTreeMap::new();
            for (k, p) in m.params().iter().enumerate() {
                asg.insert(p.clone(), 0.37 + 0.61 * (k as f64 + 1.0));
            }
            let p = m.to_phase_vector(&asg, Precision::Machine).unwrap();
            let v = potential(&p);
            assert!(v < 1e-18, "{name}: potential {v:e}");
        }
    }

    #[test]
    fn d10_kernel_basis_shape() {
        let basis = d10_kernel_basis();
        assert_eq!(basis.len(), 16);
        for v in &basis {
            assert_eq!(v.len(), 81);
            assert_eq!(v.iter().filter(|&&x| x == 1).count(), 8);
            assert_eq!(v.iter().filter(|&&x| x == -1).count(), 8);
        }
    }

    #[test]
    fn d6_1_matches_signed_position_table() {
        let m = get("D6_1").unwrap().matrix;
        assert_eq!(m.entry(2, 3), &ExactPhase::with_param(1, 4, "c", 1));
        assert_eq!(m.entry(3, 2), &ExactPhase::with_param(1, 4, "c", -1));
        let tangent = d6_family_tangent();
        for i in 1..6 {
            for j in 1..6 {
                let c = m.entry(i, j).linear().get("c").copied().unwrap_or(0);
                assert_eq!(c, tangent[(i - 1) * 5 + (j - 1)], "entry ({i},{j})");
            }
        }
    }
}
