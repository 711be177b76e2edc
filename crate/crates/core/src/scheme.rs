//! The binary Hamming scheme `H(M, 2)`.
//!
//! Vertices are `M`-bit integers and the distance-`i` relation is
//! `popcount(x ^ y) == i`. Adjacency operators are never stored; `A_i ψ` is
//! computed by XOR-ing each vertex with every weight-`i` mask.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::AmplitudeVector;

/// Largest `M` accepted by the dense (all pairs) verification routines.
pub const DENSE_VERIFY_MAX_M: usize = 12;

/// Hard ceiling on the bit dimension; vertex labels are `u32`-sized.
pub const MAX_BITS: usize = 31;

/// A vertex of `{0,1}^M`, stored as the integer whose bits are the tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel(pub u32);

impl VertexLabel {
    pub fn new(bits: u32, m: usize) -> Result<Self> {
        if m > MAX_BITS || (bits as u64) >= (1u64 << m) {
            return Err(Error::InvalidInput(format!(
                "vertex {bits:#b} is not an element of {{0,1}}^{m}"
            )));
        }
        Ok(VertexLabel(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    /// The antipodal vertex (all `m` bits flipped).
    pub fn complement(self, m: usize) -> VertexLabel {
        VertexLabel(!self.0 & full_mask(m))
    }
}

pub fn hamming_distance(x: VertexLabel, y: VertexLabel) -> usize {
    (x.0 ^ y.0).count_ones() as usize
}

fn full_mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        ((1u64 << m) - 1) as u32
    }
}

/// Number of vertices, `2^m`.
pub fn vertex_count(m: usize) -> usize {
    1usize << m
}

/// All `m`-bit masks of popcount `weight`, in increasing numeric order.
pub fn masks_of_weight(m: usize, weight: usize) -> Vec<u32> {
    (0..vertex_count(m) as u32)
        .filter(|x| x.count_ones() as usize == weight)
        .collect()
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// The adjacency operator `A_i` of the distance-`i` graph `G_i` on `{0,1}^M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeOperator {
    m: usize,
    distance_class: usize,
}

impl SchemeOperator {
    pub fn new(m: usize, distance_class: usize) -> Result<Self> {
        if m > MAX_BITS {
            return Err(Error::Resource(format!("M = {m} exceeds {MAX_BITS} bits")));
        }
        if distance_class > m {
            return Err(Error::InvalidInput(format!(
                "distance class {distance_class} outside [0, {m}]"
            )));
        }
        Ok(SchemeOperator { m, distance_class })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn distance_class(&self) -> usize {
        self.distance_class
    }

    /// Entry `⟨x|A_i|y⟩`.
    pub fn entry(&self, x: VertexLabel, y: VertexLabel) -> u8 {
        (hamming_distance(x, y) == self.distance_class) as u8
    }

    pub fn apply(&self, psi: &AmplitudeVector) -> Result<AmplitudeVector> {
        psi.require_len(vertex_count(self.m))?;
        let masks = masks_of_weight(self.m, self.distance_class);
        let src = psi.as_slice();
        let out = (0..src.len())
            .map(|x| {
                masks
                    .iter()
                    .fold(Complex64::new(0.0, 0.0), |acc, &mask| acc + src[x ^ mask as usize])
            })
            .collect();
        Ok(AmplitudeVector::from_raw(out))
    }
}

/// `(A_i ψ)(x) = Σ_{y : d(x,y) = i} ψ(y)`.
pub fn apply_adjacency(op: &SchemeOperator, psi: &AmplitudeVector) -> Result<AmplitudeVector> {
    op.apply(psi)
}

/// `p_{ij}^k` counted by brute force at the given pair `(x, y)`, which must
/// satisfy `d(x, y) = k`.
pub fn intersection_number_at(
    i: usize,
    j: usize,
    x: VertexLabel,
    y: VertexLabel,
    m: usize,
) -> u64 {
    (0..vertex_count(m) as u32)
        .map(VertexLabel)
        .filter(|&z| hamming_distance(x, z) == i && hamming_distance(y, z) == j)
        .count() as u64
}

/// `p_{ij}^k` for `H(M, 2)`, counted at `x = 0` and `y` with the first `k`
/// bits set.
pub fn intersection_number(i: usize, j: usize, k: usize, m: usize) -> Result<u64> {
    if i > m || j > m || k > m {
        return Err(Error::InvalidInput(format!(
            "indices ({i}, {j}, {k}) must lie in [0, {m}]"
        )));
    }
    if m > DENSE_VERIFY_MAX_M + 8 {
        return Err(Error::Resource(format!("M = {m} too large for brute-force counting")));
    }
    let y = VertexLabel(full_mask(k));
    Ok(intersection_number_at(i, j, VertexLabel(0), y, m))
}

/// Result of checking `A_i A_1 = c_{i+1} A_{i+1} + b_{i-1} A_{i-1}` entrywise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoseMesnerRowReport {
    pub i: usize,
    pub m: usize,
    pub c_next: u64,
    pub b_prev: u64,
    /// Largest `|lhs − rhs|` over all `4^M` entries, in exact integers.
    pub max_deviation: u64,
}

impl BoseMesnerRowReport {
    pub fn holds(&self) -> bool {
        self.max_deviation == 0
    }
}

pub fn verify_bose_mesner_row(i: usize, m: usize) -> Result<BoseMesnerRowReport> {
    if m > DENSE_VERIFY_MAX_M {
        return Err(Error::Resource(format!(
            "dense verification limited to M <= {DENSE_VERIFY_MAX_M}, got {m}"
        )));
    }
    if i > m {
        return Err(Error::InvalidInput(format!("row index {i} outside [0, {m}]")));
    }
    let c_next = if i < m { (i + 1) as u64 } else { 0 };
    let b_prev = if i > 0 { (m - i + 1) as u64 } else { 0 };
    let n = vertex_count(m) as u32;
    let mut max_deviation = 0u64;
    for x in 0..n {
        for y in 0..n {
            // (A_i A_1)_{xy} = #{z : d(x,z) = i, d(z,y) = 1}
            let lhs = (0..m)
                .filter(|&bit| ((x ^ y ^ (1 << bit)).count_ones() as usize) == i)
                .count() as u64;
            let d = (x ^ y).count_ones() as usize;
            let mut rhs = 0;
            if d == i + 1 {
                rhs += c_next;
            }
            if i > 0 && d == i - 1 {
                rhs += b_prev;
            }
            max_deviation = max_deviation.max(lhs.abs_diff(rhs));
        }
    }
    Ok(BoseMesnerRowReport {
        i,
        m,
        c_next,
        b_prev,
        max_deviation,
    })
}

/// Largest entrywise deviation of `A_1² − (2·A_2 + M·A_0)`, computed by
/// counting two-step walks.
pub fn a1_squared_deviation(m: usize) -> Result<u64> {
    if m > DENSE_VERIFY_MAX_M {
        return Err(Error::Resource(format!(
            "dense verification limited to M <= {DENSE_VERIFY_MAX_M}, got {m}"
        )));
    }
    let n = vertex_count(m);
    let mut row = vec![0u64; n];
    let mut max_deviation = 0;
    for x in 0..n {
        row.iter_mut().for_each(|c| *c = 0);
        for a in 0..m {
            for b in 0..m {
                row[x ^ (1 << a) ^ (1 << b)] += 1;
            }
        }
        for (y, &walks) in row.iter().enumerate() {
            let expected = match (x ^ y).count_ones() {
                0 => m as u64,
                2 => 2,
                _ => 0,
            };
            max_deviation = max_deviation.max(walks.abs_diff(expected));
        }
    }
    Ok(max_deviation)
}
