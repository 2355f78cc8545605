//! Enumeration of the permutation-structured solutions of `X * B = B * Y`.
//!
//! A structured pair is built from a single permutation `sigma`: `Y` is the
//! permutation matrix of `sigma` and `X` acts as `sigma` on cube rows, as the
//! induced pair action on pair/diagonal rows, and as the identity on the two
//! constant rows. The search backtracks over `sigma` column by column,
//! pruning with every entry equation whose row and column images are already
//! determined, and re-verifies each accepted pair by full exact
//! multiplication.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::encoder::{row_action_matrix, BMatrix, RowLabel};
use crate::groups::{Group, Permutation};
use crate::linalg::{
    intertwiner_space, perm_matrix, vectorize_pair, LinalgError, RatMatrix, Span,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("solution pairs come from different matrices")]
    MixedContext,
    #[error("structured solution set is not closed under composition")]
    NotClosed,
    #[error("labeling is not a bijection onto 1..=n")]
    NotBijective,
    #[error("{0}")]
    Linalg(#[from] LinalgError),
}

/// A solution `(X, Y)` of `X B = B Y` together with its permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionPair {
    pub sigma: Permutation,
    pub x: RatMatrix,
    pub y: RatMatrix,
    context: u64,
}

impl SolutionPair {
    /// Exactly re-checks `X B = B Y` against `b`.
    pub fn verify(&self, b: &BMatrix) -> bool {
        let bm = b.to_rat_matrix();
        self.x.mul(&bm) == bm.mul(&self.y)
    }
}

/// Builds the structured pair of `sigma` over the layout of `b` (it need not
/// be a solution).
pub fn structured_pair(b: &BMatrix, sigma: &Permutation) -> SolutionPair {
    assert_eq!(sigma.n(), b.n());
    SolutionPair {
        x: row_action_matrix(b.layout(), sigma),
        y: perm_matrix(sigma),
        sigma: sigma.clone(),
        context: b.fingerprint(),
    }
}

/// All permutations whose structured pair solves `X B = B Y`, ascending in
/// the image vector (hence in `sigma(1)`).
pub fn structured_solutions(b: &BMatrix) -> Vec<SolutionPair> {
    let n = b.n();
    let rows = b.rows();
    // Row images under a partial sigma: cube and diag rows need their index
    // assigned, pair rows need both. The constant rows are fixed.
    #[derive(Clone, Copy)]
    enum RowDep {
        None,
        One(usize),
        Two(usize, usize),
    }
    let deps: Vec<RowDep> = b
        .layout()
        .iter()
        .map(|l| match *l {
            RowLabel::Cube(i) | RowLabel::Diag(i) => RowDep::One(i),
            RowLabel::Pair(i, j) => RowDep::Two(i, j),
            _ => RowDep::None,
        })
        .collect();
    let mut positions: BTreeMap<RowLabel, usize> = BTreeMap::new();
    for (r, &l) in b.layout().iter().enumerate() {
        positions.insert(l, r);
    }
    let row_image = |r: usize, sigma: &[usize]| -> Option<usize> {
        let map = |i: usize| -> Option<usize> {
            let v = sigma[i];
            (v != 0).then_some(v)
        };
        match deps[r] {
            RowDep::None => Some(r),
            RowDep::One(i) => {
                let v = map(i)?;
                let label = match b.layout()[r] {
                    RowLabel::Cube(_) => RowLabel::Cube(v),
                    _ => RowLabel::Diag(v),
                };
                positions.get(&label).copied()
            }
            RowDep::Two(i, j) => {
                let (a, c) = (map(i)?, map(j)?);
                let label = RowLabel::Pair(a.min(c), a.max(c));
                positions.get(&label).copied()
            }
        }
    };

    // Checks every equation B[r][c] == B[image(r)][sigma(c)] that is fully
    // determined by the partial assignment. Sound for any well-formed matrix;
    // for built matrices the cube rows force Y = P_sigma and the pair rows
    // carry the whole condition.
    let consistent = |sigma: &[usize]| -> bool {
        for c in 1..=n {
            let tc = sigma[c];
            if tc == 0 {
                continue;
            }
            for r in 0..rows {
                if let Some(img) = row_image(r, sigma) {
                    if b.entry(r, c - 1) != b.entry(img, tc - 1) {
                        return false;
                    }
                }
            }
        }
        true
    };

    let mut sigma = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    let mut found = Vec::new();
    fn rec(
        b: &BMatrix,
        n: usize,
        pos: usize,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[usize]) -> bool,
        found: &mut Vec<SolutionPair>,
    ) {
        if pos > n {
            let perm = Permutation::new(sigma[1..].to_vec());
            let pair = structured_pair(b, &perm);
            if pair.verify(b) {
                found.push(pair);
            }
            return;
        }
        for t in 1..=n {
            if used[t] {
                continue;
            }
            sigma[pos] = t;
            used[t] = true;
            if consistent(sigma) {
                rec(b, n, pos + 1, sigma, used, consistent, found);
            }
            sigma[pos] = 0;
            used[t] = false;
        }
    }
    rec(b, n, 1, &mut sigma, &mut used, &consistent, &mut found);
    found
}

/// `(X1 X2, Y1 Y2)` with `sigma = sigma1 o sigma2`.
pub fn compose(p: &SolutionPair, q: &SolutionPair) -> Result<SolutionPair, SolverError> {
    if p.context != q.context {
        return Err(SolverError::MixedContext);
    }
    Ok(SolutionPair {
        sigma: p.sigma.compose(&q.sigma),
        x: p.x.mul(&q.x),
        y: p.y.mul(&q.y),
        context: p.context,
    })
}

/// Inverse pair: transposes of the permutation matrices, inverse permutation.
pub fn invert(p: &SolutionPair) -> SolutionPair {
    SolutionPair {
        sigma: p.sigma.inverse(),
        x: p.x.transpose(),
        y: p.y.transpose(),
        context: p.context,
    }
}

/// The structured solutions with their group law realized as a table.
#[derive(Clone, Debug)]
pub struct SolutionGroup {
    pub elements: Vec<SolutionPair>,
    /// `table[i][j]` = 1-based index of `elements[i] * elements[j]`.
    pub table: Vec<Vec<usize>>,
    /// `labeling[i] = sigma_i(1)`.
    pub labeling: Vec<usize>,
    group: Group,
}

impl SolutionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The abstract group on the solution indices.
    pub fn as_group(&self) -> &Group {
        &self.group
    }
}

/// Closes the structured solutions into a group and validates the axioms.
///
/// Products are composed at the permutation level; that agrees with the
/// matrix products because the blocks of a structured pair are permutation
/// matrices of the induced actions, which are functorial in `sigma`.
pub fn solution_group(b: &BMatrix) -> Result<SolutionGroup, SolverError> {
    let elements = structured_solutions(b);
    let index: BTreeMap<&Permutation, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (&e.sigma, i))
        .collect();
    let m = elements.len();
    let mut table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            let prod = elements[i].sigma.compose(&elements[j].sigma);
            table[i][j] = *index.get(&prod).ok_or(SolverError::NotClosed)? + 1;
        }
    }
    for e in &elements {
        if !index.contains_key(&e.sigma.inverse()) {
            return Err(SolverError::NotClosed);
        }
    }
    let names: Vec<String> = elements.iter().map(|e| e.sigma.cycle_string()).collect();
    let group = Group::validate(table.clone(), Some(names)).map_err(|_| SolverError::NotClosed)?;
    let labeling = elements.iter().map(|e| e.sigma.apply(1)).collect();
    Ok(SolutionGroup {
        elements,
        table,
        labeling,
        group,
    })
}

/// Outcome of testing the label map `s -> g_s` against a reference group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub bijective: bool,
    pub homomorphism: bool,
    pub anti_homomorphism: bool,
}

impl PsiReport {
    pub fn verdict(&self) -> &'static str {
        match (self.homomorphism, self.anti_homomorphism) {
            (true, true) => "homomorphism and anti-homomorphism",
            (true, false) => "homomorphism",
            (false, true) => "anti-homomorphism",
            (false, false) => "neither direction",
        }
    }
}

/// Checks that the labeling is a bijection onto `1..=n` and measures which
/// composition direction it transports.
pub fn psi_check(s: &SolutionGroup, g: &Group) -> Result<PsiReport, SolverError> {
    let n = g.n();
    let m = s.order();
    let mut seen = vec![false; n + 1];
    let mut bijective = m == n;
    if bijective {
        for &l in &s.labeling {
            if l < 1 || l > n || seen[l] {
                bijective = false;
                break;
            }
            seen[l] = true;
        }
    }
    if !bijective {
        return Err(SolverError::NotBijective);
    }
    let mut homomorphism = true;
    let mut anti = true;
    for i in 0..m {
        for j in 0..m {
            let prod_label = s.labeling[s.table[i][j] - 1];
            if prod_label != g.mul(s.labeling[i], s.labeling[j]) {
                homomorphism = false;
            }
            if prod_label != g.mul(s.labeling[j], s.labeling[i]) {
                anti = false;
            }
        }
    }
    Ok(PsiReport {
        bijective,
        homomorphism,
        anti_homomorphism: anti,
    })
}

/// Comparison of the structured family against the full linear space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearReport {
    /// Dimension of `{(X, Y) : XB = BY}` as a rational vector space.
    pub dimension: usize,
    /// Number of structured solutions.
    pub structured: usize,
    /// Whether every structured solution lies in the linear space.
    pub contained: bool,
}

/// Computes the full intertwiner space of `b` and verifies exact membership
/// of every structured solution.
pub fn cross_check_linear(b: &BMatrix) -> Result<LinearReport, SolverError> {
    let bm = b.to_rat_matrix();
    let basis = intertwiner_space(&bm)?;
    let vectors: Vec<Vec<crate::linalg::Rational>> = basis
        .iter()
        .map(|(x, y)| vectorize_pair(x, y))
        .collect();
    let len = bm.rows() * bm.rows() + bm.cols() * bm.cols();
    let span = Span::new(&vectors, len);
    let sols = structured_solutions(b);
    let contained = sols
        .iter()
        .all(|p| span.contains(&vectorize_pair(&p.x, &p.y)));
    Ok(LinearReport {
        dimension: basis.len(),
        structured: sols.len(),
        contained,
    })
}
