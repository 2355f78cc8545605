//! The free graded-commutative cochain algebra on `x1, x2, y1, y2, y3` and
//! `w_1..w_n`, with the degree +1 differential
//!
//! ```text
//! d x1 = d x2 = d w_j = 0,
//! d y1 = x1^3 x2,   d y2 = x1^2 x2^2,   d y3 = x1 x2^3,
//! ```
//!
//! extended by the graded Leibniz rule `d(uv) = du v + (-1)^{|u|} u dv`.
//! Degrees are `|x1| = 8`, `|x2| = 10`, `|y_i| = 33, 35, 37`, `|w_j| = 40`.
//! The odd generators `y_i` anticommute and square to zero; everything even
//! is central. The degree-119 generators `z_j` are formal domain labels only:
//! they are never multiplied, and `d_z` returns the degree-120 polynomial
//! attached to column `j` of the encoder.
//!
//! The slice machinery computes coboundaries, cocycles, and a quotient basis
//! of the degree-120 cohomology for groups of order at most 4, checks that
//! the encoder's row classes stay independent in the quotient, expresses each
//! `d z_j` in those coordinates (recovering the encoding matrix), and builds
//! the degree-120 matrix induced by a permutation of the `w` generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::encoder::{build_b, pair_terms, row_action_matrix, BuildMode, RowLabel};
use crate::groups::{Group, Permutation};
use crate::linalg::{perm_matrix, rref, rat_int, solve_exact, RatMatrix, Rational, Span};

pub const DEG_X1: u32 = 8;
pub const DEG_X2: u32 = 10;
pub const DEG_Y: [u32; 3] = [33, 35, 37];
pub const DEG_W: u32 = 40;
pub const DEG_Z: u32 = 119;

/// Scale guards for the enumeration and slice operations.
pub const MAX_DEGREE: u32 = 200;
pub const MAX_N_BASIS: usize = 8;
pub const MAX_N_SLICE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SullivanError {
    #[error("out of supported scale: {0}")]
    ScaleLimit(String),
}

/// The generator data for a group of order `n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GeneratorSet {
    pub n: usize,
}

impl GeneratorSet {
    /// `(name, degree)` pairs in canonical order.
    pub fn degrees(&self) -> Vec<(String, u32)> {
        let mut out = vec![
            ("x1".to_string(), DEG_X1),
            ("x2".to_string(), DEG_X2),
            ("y1".to_string(), DEG_Y[0]),
            ("y2".to_string(), DEG_Y[1]),
            ("y3".to_string(), DEG_Y[2]),
        ];
        for j in 1..=self.n {
            out.push((format!("w{j}"), DEG_W));
        }
        out
    }
}

/// A monomial `x1^a x2^b y1^{e1} y2^{e2} y3^{e3} w_1^{c1} ... w_n^{cn}`.
///
/// Ordering is graded lexicographic on `(a, b, e1, e2, e3, c1..cn)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x1: u32,
    pub x2: u32,
    pub ys: [bool; 3],
    pub ws: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial {
            x1: 0,
            x2: 0,
            ys: [false; 3],
            ws: vec![0; n],
        }
    }

    pub fn degree(&self) -> u32 {
        DEG_X1 * self.x1
            + DEG_X2 * self.x2
            + self
                .ys
                .iter()
                .zip(DEG_Y)
                .map(|(&e, d)| if e { d } else { 0 })
                .sum::<u32>()
            + DEG_W * self.ws.iter().sum::<u32>()
    }

    fn exponent_key(&self) -> (u32, u32, [bool; 3], &[u32]) {
        (self.x1, self.x2, self.ys, &self.ws)
    }

    /// Product with the graded sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, i64)> {
        assert_eq!(self.ws.len(), other.ws.len());
        let mut ys = [false; 3];
        let mut inversions = 0u32;
        for t in 0..3 {
            if self.ys[t] && other.ys[t] {
                return None;
            }
            ys[t] = self.ys[t] || other.ys[t];
        }
        for i in 0..3 {
            if !self.ys[i] {
                continue;
            }
            for j in 0..3 {
                if other.ys[j] && i > j {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((
            Monomial {
                x1: self.x1 + other.x1,
                x2: self.x2 + other.x2,
                ys,
                ws: self
                    .ws
                    .iter()
                    .zip(&other.ws)
                    .map(|(a, b)| a + b)
                    .collect(),
            },
            sign,
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.exponent_key()).cmp(&(other.degree(), other.exponent_key()))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pow = |name: &str, e: u32| -> String {
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        };
        if self.x1 > 0 {
            parts.push(pow("x1", self.x1));
        }
        if self.x2 > 0 {
            parts.push(pow("x2", self.x2));
        }
        for (t, &e) in self.ys.iter().enumerate() {
            if e {
                parts.push(format!("y{}", t + 1));
            }
        }
        for (j, &c) in self.ws.iter().enumerate() {
            if c > 0 {
                parts.push(pow(&format!("w{}", j + 1), c));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// A finite sum of monomials with nonzero exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Common degree of all terms; `None` for 0 or an inhomogeneous sum.
    pub fn degree(&self) -> Option<u32> {
        let mut terms = self.terms.keys();
        let d = terms.next()?.degree();
        terms.all(|m| m.degree() == d).then_some(d)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, sign)) = m1.mul(m2) {
                    out.add_term(m, c1 * c2 * rat_int(sign));
                }
            }
        }
        out
    }

    /// Report form: terms in monomial order as `q * <monomial>`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{c} * {m}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn x_monomial(n: usize, a: u32, b: u32) -> Monomial {
    Monomial {
        x1: a,
        x2: b,
        ys: [false; 3],
        ws: vec![0; n],
    }
}

fn w_monomial(n: usize, powers: &[(usize, u32)], b: u32) -> Monomial {
    let mut ws = vec![0; n];
    for &(j, c) in powers {
        ws[j - 1] += c;
    }
    Monomial {
        x1: 0,
        x2: b,
        ys: [false; 3],
        ws,
    }
}

/// `d` of a single monomial by the Leibniz rule; only the `y` factors
/// contribute, with the sign counting the odd factors to their left.
fn differential_monomial(m: &Monomial, coeff: &Rational) -> Polynomial {
    let mut out = Polynomial::zero();
    let dy: [(u32, u32); 3] = [(3, 1), (2, 2), (1, 3)];
    let mut odd_before = 0u32;
    for t in 0..3 {
        if !m.ys[t] {
            continue;
        }
        let sign = if odd_before % 2 == 0 { 1 } else { -1 };
        let mut image = m.clone();
        image.ys[t] = false;
        image.x1 += dy[t].0;
        image.x2 += dy[t].1;
        out.add_term(image, coeff * rat_int(sign));
        odd_before += 1;
    }
    out
}

/// The differential, extended linearly.
pub fn differential(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        out = out.add(&differential_monomial(m, c));
    }
    out
}

/// The closed two-odd-generator polynomial shared by every `d z_j`:
/// `y1 y2 x1^4 x2^2 - y1 y3 x1^5 x2 + y2 y3 x1^6`.
pub fn y_term(n: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    let mut with_ys = |i: usize, j: usize, a: u32, b: u32, coeff: i64| {
        let mut m = x_monomial(n, a, b);
        m.ys[i] = true;
        m.ys[j] = true;
        p.add_term(m, rat_int(coeff));
    };
    with_ys(0, 1, 4, 2, 1);
    with_ys(0, 2, 5, 1, -1);
    with_ys(1, 2, 6, 0, 1);
    p
}

/// The degree-120 polynomial attached to column `j`: the cube, the pair
/// terms (a diagonal pair contributes `w_j^2 x2^4`), the odd-pair
/// polynomial, and `x1^15`.
pub fn d_z(j: usize, g: &Group) -> Polynomial {
    let n = g.n();
    let mut p = Polynomial::monomial(w_monomial(n, &[(j, 3)], 0), Rational::one());
    for (a, b) in pair_terms(g, j) {
        let m = if a == b {
            w_monomial(n, &[(a, 2)], 4)
        } else {
            w_monomial(n, &[(a, 1), (b, 1)], 4)
        };
        p.add_term(m, Rational::one());
    }
    p = p.add(&y_term(n));
    p.add_term(x_monomial(n, 15, 0), Rational::one());
    debug_assert_eq!(p.degree(), Some(120));
    p
}

/// All monomials of exact degree `d` on the generators for order `n`
/// (the `z` labels excluded), in monomial order.
pub fn monomial_basis(d: u32, n: usize) -> Result<Vec<Monomial>, SullivanError> {
    if d > MAX_DEGREE {
        return Err(SullivanError::ScaleLimit(format!(
            "degree {d} above {MAX_DEGREE}"
        )));
    }
    if n > MAX_N_BASIS {
        return Err(SullivanError::ScaleLimit(format!(
            "{n} w-generators above {MAX_N_BASIS}"
        )));
    }
    let mut out = Vec::new();
    for ymask in 0u32..8 {
        let ys = [ymask & 1 != 0, ymask & 2 != 0, ymask & 4 != 0];
        let ydeg: u32 = ys
            .iter()
            .zip(DEG_Y)
            .map(|(&e, d)| if e { d } else { 0 })
            .sum();
        if ydeg > d {
            continue;
        }
        let rem = d - ydeg;
        for total_w in 0..=rem / DEG_W {
            let xrem = rem - DEG_W * total_w;
            for b in 0..=xrem / DEG_X2 {
                let r = xrem - DEG_X2 * b;
                if r % DEG_X1 != 0 {
                    continue;
                }
                let a = r / DEG_X1;
                // distribute total_w over n slots
                let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
                for slot in 0..n {
                    let mut next = Vec::new();
                    for partial in &stack {
                        let used: u32 = partial.iter().sum();
                        let max = total_w - used;
                        let choices = if slot + 1 == n { max..=max } else { 0..=max };
                        for c in choices {
                            let mut v = partial.clone();
                            v.push(c);
                            next.push(v);
                        }
                    }
                    stack = next;
                }
                for ws in stack {
                    debug_assert_eq!(ws.len(), n);
                    out.push(Monomial { x1: a, x2: b, ys, ws });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The degree-120 slice of the cohomology: bases of the neighboring
/// monomial spaces, the coboundary and cocycle spaces, and an extension of
/// the coboundaries to the cocycles by quotient representatives.
#[derive(Clone, Debug)]
pub struct CohomologySlice {
    pub degree: u32,
    pub basis_119: Vec<Monomial>,
    pub basis_120: Vec<Monomial>,
    pub basis_121: Vec<Monomial>,
    /// Image of the differential, as coordinate vectors over `basis_120`.
    pub coboundary_basis: Vec<Vec<Rational>>,
    /// Kernel of the differential into degree 121.
    pub cocycle_basis: Vec<Vec<Rational>>,
    /// Cocycle vectors extending the coboundaries to a basis of the kernel.
    pub quotient_basis: Vec<Vec<Rational>>,
}

impl CohomologySlice {
    pub fn quotient_dim(&self) -> usize {
        self.cocycle_basis.len() - self.coboundary_basis.len()
    }
}

fn coords(p: &Polynomial, basis: &[Monomial]) -> Vec<Rational> {
    let index: BTreeMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        let i = *index.get(m).expect("monomial inside the slice basis");
        v[i] = c.clone();
    }
    v
}

fn differential_matrix(src: &[Monomial], dst: &[Monomial]) -> RatMatrix {
    let index: BTreeMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut m = RatMatrix::zero(dst.len(), src.len());
    for (col, mono) in src.iter().enumerate() {
        let image = differential_monomial(mono, &Rational::one());
        for (im, c) in image.terms() {
            let row = *index.get(im).expect("differential stays inside the slice");
            m.set(row, col, c.clone());
        }
    }
    m
}

/// Computes the degree-120 slice for `g` (order at most 4).
pub fn cohomology_slice_120(g: &Group) -> Result<CohomologySlice, SullivanError> {
    let n = g.n();
    if n > MAX_N_SLICE {
        return Err(SullivanError::ScaleLimit(format!(
            "order {n} above {MAX_N_SLICE} for the cohomology slice"
        )));
    }
    let basis_119 = monomial_basis(119, n)?;
    let basis_120 = monomial_basis(120, n)?;
    let basis_121 = monomial_basis(121, n)?;
    let d119 = differential_matrix(&basis_119, &basis_120);
    let d120 = differential_matrix(&basis_120, &basis_121);

    let r119 = rref(&d119);
    let coboundary_basis: Vec<Vec<Rational>> =
        r119.pivots.iter().map(|&c| d119.col(c)).collect();
    let cocycle_basis = crate::linalg::nullspace(&d120);

    // quotient representatives: cocycles that extend the coboundary span
    let mut stack: Vec<Vec<Rational>> = coboundary_basis.clone();
    let mut quotient_basis = Vec::new();
    let mut rank = Span::new(&stack, basis_120.len()).rank();
    for v in &cocycle_basis {
        stack.push(v.clone());
        let new_rank = Span::new(&stack, basis_120.len()).rank();
        if new_rank > rank {
            rank = new_rank;
            quotient_basis.push(v.clone());
        } else {
            stack.pop();
        }
    }
    debug_assert_eq!(
        quotient_basis.len(),
        cocycle_basis.len() - coboundary_basis.len()
    );

    Ok(CohomologySlice {
        degree: 120,
        basis_119,
        basis_120,
        basis_121,
        coboundary_basis,
        cocycle_basis,
        quotient_basis,
    })
}

/// The polynomial named by an encoder row label.
pub fn label_polynomial(label: RowLabel, n: usize) -> Polynomial {
    match label {
        RowLabel::Cube(i) => Polynomial::monomial(w_monomial(n, &[(i, 3)], 0), Rational::one()),
        RowLabel::Pair(i, j) => {
            Polynomial::monomial(w_monomial(n, &[(i, 1), (j, 1)], 4), Rational::one())
        }
        RowLabel::Diag(i) => Polynomial::monomial(w_monomial(n, &[(i, 2)], 4), Rational::one()),
        RowLabel::YTerm => y_term(n),
        RowLabel::X15 => Polynomial::monomial(x_monomial(n, 15, 0), Rational::one()),
    }
}

/// Independence certificate for the row classes inside the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    /// Pivot columns of the stacked (coboundaries then row classes) matrix.
    pub pivots: Vec<usize>,
    pub coboundary_rank: usize,
    pub class_count: usize,
}

/// Checks that the images of the layout's row polynomials stay linearly
/// independent in the degree-120 quotient.
pub fn sigma_independence(g: &Group) -> Result<IndependenceReport, SullivanError> {
    let slice = cohomology_slice_120(g)?;
    let layout = build_b(g, BuildMode::Auto)
        .expect("auto mode always builds")
        .layout()
        .to_vec();
    let mut stack: Vec<Vec<Rational>> = slice.coboundary_basis.clone();
    let cob_rank = Span::new(&stack, slice.basis_120.len()).rank();
    debug_assert_eq!(cob_rank, slice.coboundary_basis.len());
    for &label in &layout {
        // every row class must be a cocycle
        let p = label_polynomial(label, g.n());
        debug_assert!(differential(&p).is_zero(), "row class {label} is closed");
        stack.push(coords(&p, &slice.basis_120));
    }
    let m = RatMatrix::new(
        stack.len(),
        slice.basis_120.len(),
        stack.iter().flatten().cloned().collect(),
    );
    let r = rref(&m);
    Ok(IndependenceReport {
        independent: r.rank == cob_rank + layout.len(),
        pivots: r.pivots,
        coboundary_rank: cob_rank,
        class_count: layout.len(),
    })
}

/// The matrix of `z_j -> [d z_j]` in the row-class coordinates of the
/// quotient, solved through the slice (not copied from the encoder).
///
/// Restricted to the shared layout this equals the encoder's matrix
/// entrywise; the acceptance suite asserts that identity.
pub fn b_matrix(g: &Group) -> Result<RatMatrix, SullivanError> {
    let slice = cohomology_slice_120(g)?;
    let layout = build_b(g, BuildMode::Auto)
        .expect("auto mode always builds")
        .layout()
        .to_vec();
    let n = g.n();
    let dim = slice.basis_120.len();
    let cob = &slice.coboundary_basis;
    // columns: coboundaries, then one column per row class
    let cols = cob.len() + layout.len();
    let system = RatMatrix::from_fn(dim, cols, |r, c| {
        if c < cob.len() {
            cob[c][r].clone()
        } else {
            coords(&label_polynomial(layout[c - cob.len()], n), &slice.basis_120)[r].clone()
        }
    });
    let mut out = RatMatrix::zero(layout.len(), n);
    for j in 1..=n {
        let target = coords(&d_z(j, g), &slice.basis_120);
        let solution =
            solve_exact(&system, &target).expect("d z_j lies in coboundaries + row classes");
        for (row, _) in layout.iter().enumerate() {
            out.set(row, j - 1, solution[cob.len() + row].clone());
        }
    }
    Ok(out)
}

/// The degree-120 matrix of the algebra map `w_j -> w_{sigma(j)}` (identity
/// on `x1, x2, y1, y2, y3`) restricted to the row-class coordinates.
pub fn induced_matrix_120(sigma: &Permutation, g: &Group) -> Result<RatMatrix, SullivanError> {
    assert_eq!(sigma.n(), g.n());
    let layout = build_b(g, BuildMode::Auto)
        .expect("auto mode always builds")
        .layout()
        .to_vec();
    Ok(row_action_matrix(&layout, sigma))
}

/// Whether the induced degree-120 matrix commutes with the slice matrix of
/// `b`: `A_sigma * B == B * P_sigma` exactly.
pub fn diagram_commutes(sigma: &Permutation, g: &Group) -> Result<bool, SullivanError> {
    let a = induced_matrix_120(sigma, g)?;
    let b = b_matrix(g)?;
    Ok(a.mul(&b) == b.mul(&perm_matrix(sigma)))
}
