//! Column-space projection of the graph walk onto the chain.
//!
//! Column `n` (`1..=N`) collects the `k_n = C(N−1, n−1)` vertices at distance
//! `n − 1` from the corner, and `|col n⟩` is their normalized uniform
//! superposition. Restricted to this span, `A_1` acts as `2J` and
//! `A_2/2 + (N−1)/4·I` acts as `J²`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chain::{krawtchouk_coupling, site_state, ChainPropagator, ChainSpec};
use crate::error::{Error, Result};
use crate::scheme::{binomial, vertex_count};
use crate::state::AmplitudeVector;
use crate::walk::{GraphPropagator, WalkSpec};

/// Largest `N` for which the matrix elements are summed explicitly.
pub const EXPLICIT_MAX_N: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnBasis {
    n: usize,
}

impl ColumnBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("need N >= 2 columns, got {n}")));
        }
        if n - 1 > crate::scheme::MAX_BITS {
            return Err(Error::Resource(format!("N = {n} too large")));
        }
        Ok(ColumnBasis { n })
    }

    pub fn columns(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n - 1
    }

    /// `k_n = C(N−1, n−1)` for 1-based column `n`.
    pub fn size(&self, column: usize) -> u64 {
        if column == 0 {
            return 0;
        }
        binomial(self.n - 1, column - 1)
    }

    /// 1-based column of a vertex.
    pub fn column_of(vertex: usize) -> usize {
        vertex.count_ones() as usize + 1
    }

    /// Vertices of column `n`, in increasing order.
    pub fn members(&self, column: usize) -> Vec<usize> {
        (0..vertex_count(self.m()))
            .filter(|&x| Self::column_of(x) == column)
            .collect()
    }

    /// `Σ_n c_n |col n⟩` on `{0,1}^M`.
    pub fn lift(&self, coords: &[Complex64]) -> Result<AmplitudeVector> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: coords.len(),
            });
        }
        let scaled: Vec<Complex64> = coords
            .iter()
            .enumerate()
            .map(|(k, c)| c / (self.size(k + 1) as f64).sqrt())
            .collect();
        Ok(AmplitudeVector::from_raw(
            (0..vertex_count(self.m()))
                .map(|x| scaled[x.count_ones() as usize])
                .collect(),
        ))
    }

    /// `|col n⟩` for 1-based `n`.
    pub fn column_vector(&self, column: usize) -> Result<AmplitudeVector> {
        if column == 0 || column > self.n {
            return Err(Error::InvalidInput(format!(
                "column {column} outside [1, {}]",
                self.n
            )));
        }
        let mut coords = vec![Complex64::new(0.0, 0.0); self.n];
        coords[column - 1] = Complex64::new(1.0, 0.0);
        self.lift(&coords)
    }
}

/// Coordinates of a graph state in the column basis, plus the squared norm
/// of what lies outside the column space.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnState {
    /// `c_n = ⟨col n|ψ⟩`, index `n − 1`.
    pub coords: Vec<Complex64>,
    pub leakage: f64,
}

pub fn project(basis: &ColumnBasis, psi: &AmplitudeVector) -> Result<ColumnState> {
    psi.require_len(vertex_count(basis.m()))?;
    let n = basis.columns();
    let mut sums = vec![Complex64::new(0.0, 0.0); n];
    for (x, a) in psi.as_slice().iter().enumerate() {
        sums[x.count_ones() as usize] += a;
    }
    let coords: Vec<Complex64> = sums
        .iter()
        .enumerate()
        .map(|(k, s)| s / (basis.size(k + 1) as f64).sqrt())
        .collect();
    let inside = basis.lift(&coords)?;
    let leakage = psi
        .as_slice()
        .iter()
        .zip(inside.as_slice())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    Ok(ColumnState { coords, leakage })
}

/// One quotient matrix element obtained by summing over vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixElement {
    /// Number of (ordered) adjacent vertex pairs between the two columns.
    pub pair_count: u64,
    /// `pair_count / √(k_a k_b)`.
    pub value: f64,
    pub closed_form: f64,
    /// Exact agreement with the closed form, decided in integer arithmetic.
    pub exact: bool,
}

impl MatrixElement {
    pub fn deviation(&self) -> f64 {
        (self.value - self.closed_form).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRow {
    /// 1-based column.
    pub n: usize,
    /// `⟨col n+1|A_1|col n⟩` vs `2J_n`.
    pub a1_forward: Option<MatrixElement>,
    /// `⟨col n+2|A_2|col n⟩` vs `2J_nJ_{n+1}`.
    pub a2_forward: Option<MatrixElement>,
    /// `⟨col n−2|A_2|col n⟩` vs `2J_{n−1}J_{n−2}`.
    pub a2_backward: Option<MatrixElement>,
    /// `⟨col n|A_2|col n⟩` vs `(n−1)(N−n)`.
    pub a2_diagonal: MatrixElement,
    /// Ordered pairs inside column `n` at distance `2ℓ`, indexed by `ℓ`.
    pub within_column_distances: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientTable {
    pub n: usize,
    pub rows: Vec<QuotientRow>,
}

impl QuotientTable {
    fn elements(&self) -> impl Iterator<Item = &MatrixElement> {
        self.rows.iter().flat_map(|r| {
            [r.a1_forward.as_ref(), r.a2_forward.as_ref(), r.a2_backward.as_ref(), Some(&r.a2_diagonal)]
                .into_iter()
                .flatten()
        })
    }

    pub fn all_exact(&self) -> bool {
        self.elements().all(|e| e.exact)
            && self.rows.iter().all(|r| {
                // A_2 sees only the ℓ = 1 shell inside a column
                let within = r.within_column_distances.get(1).copied().unwrap_or(0);
                within == r.a2_diagonal.pair_count
            })
    }

    pub fn max_deviation(&self) -> f64 {
        self.elements().map(MatrixElement::deviation).fold(0.0, f64::max)
    }

    /// Summed quotient of `A_1` as an `N × N` matrix.
    pub fn q1(&self) -> DMatrix<f64> {
        let mut q = DMatrix::zeros(self.n, self.n);
        for r in &self.rows {
            if let Some(e) = r.a1_forward {
                q[(r.n, r.n - 1)] = e.value;
                q[(r.n - 1, r.n)] = e.value;
            }
        }
        q
    }

    /// Summed quotient of `A_2` as an `N × N` matrix.
    pub fn q2(&self) -> DMatrix<f64> {
        let mut q = DMatrix::zeros(self.n, self.n);
        for r in &self.rows {
            let k = r.n - 1;
            q[(k, k)] = r.a2_diagonal.value;
            if let Some(e) = r.a2_forward {
                q[(k + 2, k)] = e.value;
            }
            if let Some(e) = r.a2_backward {
                q[(k - 2, k)] = e.value;
            }
        }
        q
    }
}

struct PairCounts {
    by_distance: Vec<u64>,
}

fn count_pairs(a: &[usize], b: &[usize], m: usize) -> PairCounts {
    let mut by_distance = vec![0u64; m + 1];
    for &x in a {
        for &y in b {
            by_distance[(x ^ y).count_ones() as usize] += 1;
        }
    }
    PairCounts { by_distance }
}

/// Element between columns of sizes `ka`, `kb` from `count` pairs, checked
/// against a closed form whose square is `num / den`.
fn element(count: u64, ka: u64, kb: u64, closed: f64, num: u128, den: u128) -> MatrixElement {
    let value = count as f64 / ((ka * kb) as f64).sqrt();
    // value² = count²/(ka·kb) = num/den
    let exact = (count as u128).pow(2) * den == num * (ka as u128) * (kb as u128);
    MatrixElement {
        pair_count: count,
        value,
        closed_form: closed,
        exact,
    }
}

/// Sums every quotient matrix element of `A_1` and `A_2` over vertex pairs
/// and compares with the closed forms in `J_n`.
pub fn quotient_matrix_elements(n_sites: usize) -> Result<QuotientTable> {
    if n_sites > EXPLICIT_MAX_N {
        return Err(Error::Resource(format!(
            "explicit column summation limited to N <= {EXPLICIT_MAX_N}, got {n_sites}"
        )));
    }
    let basis = ColumnBasis::new(n_sites)?;
    let m = basis.m();
    let big_n = n_sites as u128;
    let members: Vec<Vec<usize>> = (1..=n_sites).map(|c| basis.members(c)).collect();
    let jn = |n: usize| krawtchouk_coupling(n, n_sites);

    let mut rows = Vec::with_capacity(n_sites);
    for n in 1..=n_sites {
        let nn = n as u128;
        let kn = basis.size(n);
        let col = &members[n - 1];

        let a1_forward = (n < n_sites).then(|| {
            let c = count_pairs(col, &members[n], m).by_distance[1];
            element(c, kn, basis.size(n + 1), 2.0 * jn(n), nn * (big_n - nn), 1)
        });
        let a2_forward = (n + 2 <= n_sites).then(|| {
            let c = count_pairs(col, &members[n + 1], m).by_distance[2];
            let num = nn * (big_n - nn) * (nn + 1) * (big_n - nn - 1);
            element(c, kn, basis.size(n + 2), 2.0 * jn(n) * jn(n + 1), num, 4)
        });
        let a2_backward = (n >= 3).then(|| {
            let c = count_pairs(col, &members[n - 3], m).by_distance[2];
            // the transpose of the forward element at n − 2
            let num = (nn - 1) * (big_n - nn + 1) * (nn - 2) * (big_n - nn + 2);
            element(c, kn, basis.size(n - 2), 2.0 * jn(n - 1) * jn(n - 2), num, 4)
        });

        let within = count_pairs(col, col, m).by_distance;
        let diag_count = within.get(2).copied().unwrap_or(0);
        let closed = ((n - 1) * (n_sites - n)) as u64;
        let a2_diagonal = MatrixElement {
            pair_count: diag_count,
            value: diag_count as f64 / kn as f64,
            closed_form: closed as f64,
            exact: diag_count == closed * kn,
        };
        // odd distances never occur inside a column
        debug_assert!(within.iter().skip(1).step_by(2).all(|&c| c == 0));
        let within_column_distances = within.iter().step_by(2).copied().collect();

        rows.push(QuotientRow {
            n,
            a1_forward,
            a2_forward,
            a2_backward,
            a2_diagonal,
            within_column_distances,
        });
    }
    Ok(QuotientTable { n: n_sites, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedDiagonalRow {
    pub n: usize,
    /// `⟨col n|A_2/2 + (N−1)/4·I|col n⟩`.
    pub lhs: f64,
    /// `J_n² + J_{n−1}²`.
    pub rhs: f64,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedDiagonalReport {
    pub n: usize,
    pub rows: Vec<ShiftedDiagonalRow>,
}

impl ShiftedDiagonalReport {
    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().map(|r| (r.lhs - r.rhs).abs()).fold(0.0, f64::max)
    }

    pub fn all_exact(&self) -> bool {
        self.rows.iter().all(|r| r.exact)
    }
}

pub fn verify_shifted_diagonal(n_sites: usize) -> Result<ShiftedDiagonalReport> {
    let table = quotient_matrix_elements(n_sites)?;
    let basis = ColumnBasis::new(n_sites)?;
    let big_n = n_sites as u64;
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let n = r.n as u64;
            let kn = basis.size(r.n);
            let count = r.a2_diagonal.pair_count;
            let lhs = count as f64 / (2.0 * kn as f64) + (n_sites - 1) as f64 / 4.0;
            let rhs = krawtchouk_coupling(r.n, n_sites).powi(2)
                + krawtchouk_coupling(r.n - 1, n_sites).powi(2);
            // ×4k_n: 2·count + (N−1)k_n = k_n[n(N−n) + (n−1)(N−n+1)]
            let exact = 2 * count + (big_n - 1) * kn == kn * (n * (big_n - n) + (n - 1) * (big_n - n + 1));
            ShiftedDiagonalRow {
                n: r.n,
                lhs,
                rhs,
                exact,
            }
        })
        .collect();
    Ok(ShiftedDiagonalReport { n: n_sites, rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    /// Max `|c_n − e^{iτα(N−1)/4}·chain_n|` over columns.
    pub max_deviation: f64,
    /// Squared norm of the evolved graph state outside the column space.
    pub leakage: f64,
}

/// Evolves the corner on the graph, projects to columns and compares with
/// the chain evolution of `|1⟩`, corrected by the phase of the dropped
/// `(α/4)(N−1)·I` shift.
pub fn equivalence_check(n_sites: usize, alpha: f64, beta: f64, tau: f64) -> Result<EquivalenceReport> {
    let walk = WalkSpec::for_chain(n_sites, alpha, beta)?;
    let chain = ChainSpec::new(n_sites, alpha, beta)?;
    let graph = GraphPropagator::new(walk)
        .evolve(&AmplitudeVector::basis(walk.dim(), 0)?, tau)?;
    let projected = project(&ColumnBasis::new(n_sites)?, &graph)?;
    let reference = ChainPropagator::new(chain)
        .evolve(&site_state(n_sites, 1)?, tau)?
        .scale(Complex64::from_polar(1.0, tau * alpha * (n_sites - 1) as f64 / 4.0));
    let max_deviation = projected
        .coords
        .iter()
        .zip(reference.as_slice())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(EquivalenceReport {
        max_deviation,
        leakage: projected.leakage,
    })
}
