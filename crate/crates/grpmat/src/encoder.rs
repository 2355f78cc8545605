//! The 0/1 encoding matrix of a finite group.
//!
//! Column `j` of the matrix records the degree-120 differential of the j-th
//! formal generator: one cube row `w_j^3`, one pair (or diagonal) row per
//! term `w_j w_t x2^4`, and the two rows shared by every column (the odd-pair
//! polynomial and `x1^15`). The pair indices `t` are `sigma_{j+1}(s)` for
//! `s` ranging over 1 and the cycle leaders of `sigma_2` (for the last column
//! the successor wraps to the identity, so the indices are the leaders
//! themselves).
//!
//! Strict mode is the `(n^2 + n + 4) / 2`-row layout with cube rows, the
//! lexicographic pair block, and the two constant rows. Some enumerations
//! produce a `w_j^2` term; extended mode inserts one diagonal row per index
//! between the pair block and the constant rows to hold those.

use std::fmt;

use thiserror::Error;

use crate::groups::{
    cayley_embed, cycle_decompose, enumerate_groups, permutations_fixing_first, Group, GroupError,
    Permutation,
};
use crate::linalg::{rat_int, RatMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("column {column} (element {element}) carries a diagonal term; strict mode cannot hold it")]
    DiagonalTermInStrictMode { column: usize, element: String },
    #[error("order {0} too large for the canonical search (max 8)")]
    OrderTooLarge(usize),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("malformed matrix file: {0}")]
    Malformed(String),
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
}

/// A row of the encoding matrix.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RowLabel {
    /// `w_i^3`
    Cube(usize),
    /// `w_i w_j x2^4`, `i < j`
    Pair(usize, usize),
    /// `w_i^2 x2^4` (extended layout only)
    Diag(usize),
    /// `y1 y2 x1^4 x2^2 - y1 y3 x1^5 x2 + y2 y3 x1^6`
    YTerm,
    /// `x1^15`
    X15,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Cube(i) => write!(f, "cube:{i}"),
            RowLabel::Pair(i, j) => write!(f, "pair:{i},{j}"),
            RowLabel::Diag(i) => write!(f, "diag:{i}"),
            RowLabel::YTerm => write!(f, "yterm"),
            RowLabel::X15 => write!(f, "x15"),
        }
    }
}

impl RowLabel {
    pub fn parse(s: &str) -> Option<RowLabel> {
        if s == "yterm" {
            return Some(RowLabel::YTerm);
        }
        if s == "x15" {
            return Some(RowLabel::X15);
        }
        if let Some(rest) = s.strip_prefix("cube:") {
            return rest.parse().ok().map(RowLabel::Cube);
        }
        if let Some(rest) = s.strip_prefix("diag:") {
            return rest.parse().ok().map(RowLabel::Diag);
        }
        if let Some(rest) = s.strip_prefix("pair:") {
            let (i, j) = rest.split_once(',')?;
            let (i, j) = (i.parse().ok()?, j.parse().ok()?);
            if i < j {
                return Some(RowLabel::Pair(i, j));
            }
        }
        None
    }
}

/// Layout family of a built matrix. Strict sorts before extended, which the
/// canonical search relies on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Mode {
    Strict,
    Extended,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Strict => f.write_str("strict"),
            Mode::Extended => f.write_str("extended"),
        }
    }
}

/// Mode request for [`build_b`]; `Auto` picks strict unless a diagonal term
/// forces the extended layout.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BuildMode {
    Strict,
    Extended,
    Auto,
}

/// The deterministic row layout: cubes, lexicographic pairs, diagonals
/// (extended only), then the two constant rows.
pub fn row_layout(n: usize, mode: Mode) -> Vec<RowLabel> {
    let mut layout = Vec::new();
    for i in 1..=n {
        layout.push(RowLabel::Cube(i));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            layout.push(RowLabel::Pair(i, j));
        }
    }
    if mode == Mode::Extended {
        for i in 1..=n {
            layout.push(RowLabel::Diag(i));
        }
    }
    layout.push(RowLabel::YTerm);
    layout.push(RowLabel::X15);
    layout
}

/// The encoding matrix: 0/1 entries over a typed row layout.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BMatrix {
    n: usize,
    mode: Mode,
    layout: Vec<RowLabel>,
    /// Row-major 0/1 grid, `layout.len() x n`.
    entries: Vec<u8>,
}

impl BMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rows(&self) -> usize {
        self.layout.len()
    }

    pub fn layout(&self) -> &[RowLabel] {
        &self.layout
    }

    /// 0-based entry access.
    pub fn entry(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.n + c]
    }

    pub fn position(&self, label: RowLabel) -> Option<usize> {
        self.layout.iter().position(|&l| l == label)
    }

    /// The pair/diagonal labels carrying a 1 in 1-based column `j`.
    pub fn column_pairs(&self, j: usize) -> Vec<RowLabel> {
        self.layout
            .iter()
            .enumerate()
            .filter(|(r, l)| {
                matches!(l, RowLabel::Pair(..) | RowLabel::Diag(_)) && self.entry(*r, j - 1) == 1
            })
            .map(|(_, &l)| l)
            .collect()
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows(), self.n, |r, c| rat_int(self.entry(r, c) as i64))
    }

    /// Stable identity for checking that two solution pairs refer to the same
    /// matrix.
    pub fn fingerprint(&self) -> u64 {
        use std::collections::hash_map::DefaultHasher;
        use std::hash::{Hash, Hasher};
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    /// File form: `# n=`, `# mode=`, `# rows= cols=`, one `# row i=<label>`
    /// line per row, then the 0/1 grid. Round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# n={}\n", self.n));
        out.push_str(&format!("# mode={}\n", self.mode));
        out.push_str(&format!("# rows={} cols={}\n", self.rows(), self.n));
        for (i, label) in self.layout.iter().enumerate() {
            out.push_str(&format!("# row {}={}\n", i + 1, label));
        }
        for r in 0..self.rows() {
            let line: Vec<String> = (0..self.n)
                .map(|c| self.entry(r, c).to_string())
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<BMatrix, EncodeError> {
        let malformed = |msg: &str| EncodeError::Malformed(msg.to_string());
        let mut lines = text.lines().peekable();
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("# n="))
            .ok_or_else(|| malformed("missing `# n=` header"))?
            .trim()
            .parse()
            .map_err(|_| malformed("bad n"))?;
        let mode = match lines.next().and_then(|l| l.strip_prefix("# mode=")) {
            Some("strict") => Mode::Strict,
            Some("extended") => Mode::Extended,
            _ => return Err(malformed("missing or bad `# mode=` header")),
        };
        let shape = lines
            .next()
            .and_then(|l| l.strip_prefix("# rows="))
            .ok_or_else(|| malformed("missing `# rows=` header"))?;
        let (rows_s, cols_s) = shape
            .split_once(" cols=")
            .ok_or_else(|| malformed("bad shape header"))?;
        let rows: usize = rows_s.trim().parse().map_err(|_| malformed("bad rows"))?;
        let cols: usize = cols_s.trim().parse().map_err(|_| malformed("bad cols"))?;
        if cols != n {
            return Err(EncodeError::LayoutMismatch(format!(
                "cols={cols} disagrees with n={n}"
            )));
        }
        let expected = row_layout(n, mode);
        if rows != expected.len() {
            return Err(EncodeError::LayoutMismatch(format!(
                "{rows} rows declared; {} layout needs {}",
                mode,
                expected.len()
            )));
        }
        let mut layout = Vec::with_capacity(rows);
        for i in 1..=rows {
            let line = lines
                .next()
                .ok_or_else(|| malformed(&format!("missing `# row {i}=` line")))?;
            let label_text = line
                .strip_prefix(&format!("# row {i}="))
                .ok_or_else(|| malformed(&format!("bad `# row {i}=` line")))?;
            let label =
                RowLabel::parse(label_text).ok_or_else(|| malformed(&format!("bad label `{label_text}`")))?;
            layout.push(label);
        }
        if layout != expected {
            return Err(EncodeError::LayoutMismatch(
                "row labels disagree with the declared mode".into(),
            ));
        }
        let mut entries = Vec::with_capacity(rows * n);
        for r in 1..=rows {
            let line = lines
                .next()
                .ok_or_else(|| malformed(&format!("missing grid row {r}")))?;
            let mut count = 0;
            for tok in line.split_whitespace() {
                match tok {
                    "0" => entries.push(0),
                    "1" => entries.push(1),
                    _ => return Err(malformed(&format!("entries must be 0/1, got `{tok}`"))),
                }
                count += 1;
            }
            if count != n {
                return Err(EncodeError::LayoutMismatch(format!(
                    "grid row {r} has {count} entries, expected {n}"
                )));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(malformed("trailing content"));
        }
        Ok(BMatrix {
            n,
            mode,
            layout,
            entries,
        })
    }
}

/// Writes the matrix file format.
pub fn serialize_b(b: &BMatrix) -> String {
    b.to_text()
}

/// Parses the matrix file format.
pub fn parse_b(text: &str) -> Result<BMatrix, EncodeError> {
    BMatrix::from_text(text)
}

/// The unordered pair terms of column `j`, sorted; a diagonal term shows up
/// as `(t, t)`. Empty for the trivial group.
pub fn pair_terms(g: &Group, j: usize) -> Vec<(usize, usize)> {
    let n = g.n();
    assert!(j >= 1 && j <= n, "column out of range");
    if n == 1 {
        return Vec::new();
    }
    let sigmas = cayley_embed(g);
    let cd = cycle_decompose(&sigmas[1]).expect("sigma_2 of a valid group sends 1 to 2");
    let mut reps = vec![1usize];
    reps.extend(&cd.leaders);
    let successor = if j < n { &sigmas[j] } else { &sigmas[0] };
    let mut pairs: Vec<(usize, usize)> = reps
        .iter()
        .map(|&s| {
            let t = successor.apply(s);
            (j.min(t), j.max(t))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Builds the encoding matrix of `g`.
pub fn build_b(g: &Group, mode: BuildMode) -> Result<BMatrix, EncodeError> {
    let n = g.n();
    let columns: Vec<Vec<(usize, usize)>> = (1..=n).map(|j| pair_terms(g, j)).collect();
    let diagonal_column = columns
        .iter()
        .enumerate()
        .find(|(_, pairs)| pairs.iter().any(|(a, b)| a == b))
        .map(|(idx, _)| idx + 1);
    let resolved = match (mode, diagonal_column) {
        (BuildMode::Strict, Some(column)) => {
            return Err(EncodeError::DiagonalTermInStrictMode {
                column,
                element: g.name(column).to_string(),
            })
        }
        (BuildMode::Strict, None) => Mode::Strict,
        (BuildMode::Extended, _) => Mode::Extended,
        (BuildMode::Auto, Some(_)) => Mode::Extended,
        (BuildMode::Auto, None) => Mode::Strict,
    };
    let layout = row_layout(n, resolved);
    let rows = layout.len();
    let mut entries = vec![0u8; rows * n];
    let pos = |label: RowLabel| -> usize {
        layout
            .iter()
            .position(|&l| l == label)
            .expect("layout contains every generated label")
    };
    for j in 1..=n {
        entries[(pos(RowLabel::Cube(j))) * n + (j - 1)] = 1;
        for &(a, b) in &columns[j - 1] {
            let label = if a == b {
                RowLabel::Diag(a)
            } else {
                RowLabel::Pair(a, b)
            };
            entries[pos(label) * n + (j - 1)] = 1;
        }
        entries[pos(RowLabel::YTerm) * n + (j - 1)] = 1;
        entries[pos(RowLabel::X15) * n + (j - 1)] = 1;
    }
    Ok(BMatrix {
        n,
        mode: resolved,
        layout,
        entries,
    })
}

/// The canonical form: the lexicographically least build over all element
/// orderings fixing the identity, with strict-mode matrices sorting before
/// extended ones. Also returns the first ordering attaining the minimum.
pub fn canonical_b(g: &Group) -> Result<(BMatrix, Permutation), EncodeError> {
    let n = g.n();
    if n > 8 {
        return Err(EncodeError::OrderTooLarge(n));
    }
    let mut best: Option<(BMatrix, Permutation)> = None;
    for ordering in permutations_fixing_first(n) {
        let relabeled = g.relabel(&ordering);
        let b = build_b(&relabeled, BuildMode::Auto)?;
        match &best {
            Some((current, _)) if *current <= b => {}
            _ => best = Some((b, ordering)),
        }
    }
    Ok(best.expect("at least the identity ordering exists"))
}

/// Census of distinct canonical matrices for one order.
#[derive(Clone, Debug)]
pub struct Census {
    /// Number of distinct canonical matrices.
    pub count: usize,
    /// The distinct canonical matrices, in first-seen order.
    pub matrices: Vec<BMatrix>,
    /// Number of groups enumerated (the census postcondition expects
    /// `count == group_count`).
    pub group_count: usize,
    /// Canonical mode per enumerated group, aligned with
    /// [`crate::groups::enumeration_names`].
    pub modes: Vec<Mode>,
}

/// Canonicalizes every group of order `n` and counts distinct matrices.
pub fn census(n: usize) -> Result<Census, EncodeError> {
    let groups = enumerate_groups(n)?;
    let mut matrices: Vec<BMatrix> = Vec::new();
    let mut modes = Vec::new();
    for g in &groups {
        let (b, _) = canonical_b(g)?;
        modes.push(b.mode());
        if !matrices.contains(&b) {
            matrices.push(b);
        }
    }
    Ok(Census {
        count: matrices.len(),
        matrices,
        group_count: groups.len(),
        modes,
    })
}

/// The row permutation induced by `sigma` on a layout: cubes and diagonals
/// move by `sigma`, pairs by the elementwise action, the constant rows stay.
/// Returns the image position of each row.
pub fn induced_row_action(layout: &[RowLabel], sigma: &Permutation) -> Vec<usize> {
    let pos = |label: RowLabel| -> usize {
        layout
            .iter()
            .position(|&l| l == label)
            .expect("layout closed under the induced action")
    };
    layout
        .iter()
        .map(|&label| match label {
            RowLabel::Cube(i) => pos(RowLabel::Cube(sigma.apply(i))),
            RowLabel::Diag(i) => pos(RowLabel::Diag(sigma.apply(i))),
            RowLabel::Pair(i, j) => {
                let (a, b) = (sigma.apply(i), sigma.apply(j));
                pos(RowLabel::Pair(a.min(b), a.max(b)))
            }
            RowLabel::YTerm => pos(RowLabel::YTerm),
            RowLabel::X15 => pos(RowLabel::X15),
        })
        .collect()
}

/// The block matrix acting as `sigma` on cube rows, the induced pair action
/// on pair/diagonal rows, and the identity on the two constant rows.
pub fn row_action_matrix(layout: &[RowLabel], sigma: &Permutation) -> RatMatrix {
    let action = induced_row_action(layout, sigma);
    let mut m = RatMatrix::zero(layout.len(), layout.len());
    for (src, &dst) in action.iter().enumerate() {
        m.set(dst, src, Rational::from_integer(1.into()));
    }
    m
}
