//! Finite groups as explicit multiplication tables.
//!
//! The table convention is 1-based and identity-first: element 1 is the
//! identity, `table[j][k]` is the index of `g_j * g_k`, and every row and
//! column is a permutation of `1..=n`. Permutations compose as functions,
//! `(s.compose(t))(x) = s(t(x))`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from parsing, catalog lookup, and the cycle/enumeration operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group file: {0}")]
    Malformed(String),
    #[error("invalid multiplication table: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown catalog group `{0}`")]
    UnknownName(String),
    #[error("unsupported order {0} (supported range is 1..=8)")]
    UnsupportedOrder(usize),
    #[error("expected sigma_2 with sigma_2(1) = 2, found sigma_2(1) = {0}")]
    NotDerangedAtOne(usize),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A single table defect, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `table[1][k] != k`.
    IdentityRow { k: usize, found: usize },
    /// `table[k][1] != k`.
    IdentityColumn { k: usize, found: usize },
    /// Entry outside `1..=n`.
    EntryOutOfRange { row: usize, col: usize, value: usize },
    /// A row repeats a value.
    RowNotPermutation { row: usize, value: usize },
    /// A column repeats a value.
    ColumnNotPermutation { col: usize, value: usize },
    /// `(a*b)*c != a*(b*c)` for the witness triple.
    NotAssociative { a: usize, b: usize, c: usize },
    /// No `b` with `a*b = 1`.
    NoInverse { element: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityRow { k, found } => {
                write!(f, "identity row: table[1][{k}] = {found}, expected {k}")
            }
            Violation::IdentityColumn { k, found } => {
                write!(f, "identity column: table[{k}][1] = {found}, expected {k}")
            }
            Violation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry table[{row}][{col}] = {value} out of range")
            }
            Violation::RowNotPermutation { row, value } => {
                write!(f, "row {row} repeats value {value}")
            }
            Violation::ColumnNotPermutation { col, value } => {
                write!(f, "column {col} repeats value {value}")
            }
            Violation::NotAssociative { a, b, c } => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
            Violation::NoInverse { element } => {
                write!(f, "element {element} has no inverse")
            }
        }
    }
}

/// A permutation of `1..=n`, stored by its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images. Panics if `images` is not a
    /// bijection of `1..=n`; callers construct these from already-validated
    /// data.
    pub fn new(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            assert!(v >= 1 && v <= n, "image {v} out of range 1..={n}");
            assert!(!seen[v], "image {v} repeated");
            seen[v] = true;
        }
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 1-based application.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: (1..=self.n()).map(|x| self.apply(other.apply(x))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// All cycles, including fixed points, each rotated to start at its
    /// minimum and listed in ascending order of that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle notation with fixed points omitted; the identity prints as `e`.
    pub fn cycle_string(&self) -> String {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return "e".to_string();
        }
        nontrivial
            .iter()
            .map(|c| {
                let inner = c
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("({inner})")
            })
            .collect::<Vec<_>>()
            .join("")
    }

    /// Test helper: builds a permutation of `1..=n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                images[v - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// All permutations of `1..=n` fixing 1, in lexicographic image order.
pub fn permutations_fixing_first(n: usize) -> Vec<Permutation> {
    fn rec(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(rest, prefix, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (2..=n).collect();
    rec(&mut rest, &mut vec![1], &mut out);
    out.into_iter().map(Permutation::new).collect()
}

/// The cycle structure of `sigma_2`: the cycle through 1 (the anchor), plus
/// one leader per remaining cycle.
///
/// Leaders are canonicalized as the minimum of their cycle and listed in
/// ascending order; fixed points count as singleton cycles and contribute
/// leaders. `k` is the number of non-anchor cycles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleData {
    pub anchor_cycle: Vec<usize>,
    pub leaders: Vec<usize>,
    pub k: usize,
    /// Anchor first, then the leader cycles in leader order.
    pub cycles: Vec<Vec<usize>>,
}

/// Decomposes `sigma_2` into cycles anchored at 1.
pub fn cycle_decompose(sigma2: &Permutation) -> Result<CycleData, GroupError> {
    if sigma2.n() < 2 || sigma2.apply(1) != 2 {
        return Err(GroupError::NotDerangedAtOne(sigma2.apply(1)));
    }
    let all = sigma2.cycles();
    let anchor_pos = all
        .iter()
        .position(|c| c.contains(&1))
        .expect("orbit of 1 exists");
    let anchor = all[anchor_pos].clone();
    let mut rest: Vec<Vec<usize>> = all
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != anchor_pos)
        .map(|(_, c)| c)
        .collect();
    rest.sort_by_key(|c| c[0]);
    let leaders: Vec<usize> = rest.iter().map(|c| c[0]).collect();
    let mut cycles = vec![anchor.clone()];
    cycles.extend(rest);
    Ok(CycleData {
        k: leaders.len(),
        anchor_cycle: anchor,
        leaders,
        cycles,
    })
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    table: Vec<Vec<usize>>,
}

/// A validated finite group: 1-based identity-first multiplication table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Group {
    n: usize,
    table: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl Group {
    /// Checks all four table axioms and returns either the group or the
    /// complete list of violations found.
    pub fn validate(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Group, Vec<Violation>> {
        let n = table.len();
        let mut violations = Vec::new();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(vec![Violation::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 0,
            }]);
        }
        let mut in_range = true;
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v < 1 || v > n {
                    violations.push(Violation::EntryOutOfRange {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                    });
                    in_range = false;
                }
            }
        }
        if !in_range {
            return Err(violations);
        }

        for k in 1..=n {
            if table[0][k - 1] != k {
                violations.push(Violation::IdentityRow {
                    k,
                    found: table[0][k - 1],
                });
            }
            if table[k - 1][0] != k {
                violations.push(Violation::IdentityColumn {
                    k,
                    found: table[k - 1][0],
                });
            }
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n + 1];
            for &v in row {
                if seen[v] {
                    violations.push(Violation::RowNotPermutation {
                        row: i + 1,
                        value: v,
                    });
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n + 1];
            for row in &table {
                let v = row[j];
                if seen[v] {
                    violations.push(Violation::ColumnNotPermutation {
                        col: j + 1,
                        value: v,
                    });
                }
                seen[v] = true;
            }
        }
        'assoc: for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    let ab_c = table[table[a - 1][b - 1] - 1][c - 1];
                    let a_bc = table[a - 1][table[b - 1][c - 1] - 1];
                    if ab_c != a_bc {
                        violations.push(Violation::NotAssociative { a, b, c });
                        // one witness per table keeps the report readable
                        break 'assoc;
                    }
                }
            }
        }
        for a in 1..=n {
            if !(1..=n).any(|b| table[a - 1][b - 1] == 1) {
                violations.push(Violation::NoInverse { element: a });
            }
        }

        if violations.is_empty() {
            let names = names.unwrap_or_else(|| (1..=n).map(|i| format!("g{i}")).collect());
            assert_eq!(names.len(), n, "need one name per element");
            Ok(Group { n, table, names })
        } else {
            Err(violations)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based product `g_a * g_b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a - 1][b - 1]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (1..=self.n)
            .find(|&b| self.mul(a, b) == 1)
            .expect("validated groups have inverses")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut pow = a;
        let mut ord = 1;
        while pow != 1 {
            pow = self.mul(pow, a);
            ord += 1;
        }
        ord
    }

    pub fn is_abelian(&self) -> bool {
        (1..=self.n).all(|a| (a..=self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The group re-enumerated by `ordering`, where `ordering.apply(pos)` is
    /// the old index of the element placed at `pos`. Requires
    /// `ordering.apply(1) == 1` so the identity stays first.
    pub fn relabel(&self, ordering: &Permutation) -> Group {
        assert_eq!(ordering.apply(1), 1, "orderings must fix the identity");
        assert_eq!(ordering.n(), self.n);
        let inv = ordering.inverse();
        let table: Vec<Vec<usize>> = (1..=self.n)
            .map(|a| {
                (1..=self.n)
                    .map(|b| inv.apply(self.mul(ordering.apply(a), ordering.apply(b))))
                    .collect()
            })
            .collect();
        let names = (1..=self.n)
            .map(|a| self.names[ordering.apply(a) - 1].clone())
            .collect();
        Group {
            n: self.n,
            table,
            names,
        }
    }

    /// Canonical JSON form: fields `n`, `names`, `table` in that order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupFile {
            n: self.n,
            names: Some(self.names.clone()),
            table: self.table.clone(),
        })
        .expect("group serialization cannot fail")
    }
}

/// Parses and validates the JSON group file format.
pub fn parse_group(text: &str) -> Result<Group, GroupError> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))?;
    if file.n == 0 {
        return Err(GroupError::Malformed("n must be positive".into()));
    }
    if file.table.len() != file.n {
        return Err(GroupError::Malformed(format!(
            "table has {} rows, declared n={}",
            file.table.len(),
            file.n
        )));
    }
    if let Some(row) = file.table.iter().position(|r| r.len() != file.n) {
        return Err(GroupError::Malformed(format!(
            "table row {} has {} entries, declared n={}",
            row + 1,
            file.table[row].len(),
            file.n
        )));
    }
    if let Some(names) = &file.names {
        if names.len() != file.n {
            return Err(GroupError::Malformed(format!(
                "{} names for n={} elements",
                names.len(),
                file.n
            )));
        }
    }
    Group::validate(file.table, file.names).map_err(GroupError::Invalid)
}

fn cyclic(n: usize) -> Group {
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n + 1).collect())
        .collect();
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    Group::validate(table, Some(names)).expect("cyclic table is a group")
}

/// Direct product with the first factor major, so the element at index
/// `(a-1)*|B| + b` is the pair `(a, b)`.
fn direct_product(g: &Group, h: &Group) -> Group {
    let n = g.n * h.n;
    let idx = |a: usize, b: usize| (a - 1) * h.n + b;
    let mut table = vec![vec![0; n]; n];
    for a1 in 1..=g.n {
        for b1 in 1..=h.n {
            for a2 in 1..=g.n {
                for b2 in 1..=h.n {
                    table[idx(a1, b1) - 1][idx(a2, b2) - 1] = idx(g.mul(a1, a2), h.mul(b1, b2));
                }
            }
        }
    }
    let mut names = vec![String::new(); n];
    for a in 1..=g.n {
        for b in 1..=h.n {
            names[idx(a, b) - 1] = format!("({},{})", g.name(a), h.name(b));
        }
    }
    Group::validate(table, Some(names)).expect("product of groups is a group")
}

/// Order: e, r, r^2, r^3, s, rs, r^2 s, r^3 s with r^4 = s^2 = e, s r = r^3 s.
fn dihedral4() -> Group {
    // element (a, b) = r^a s^b; (a1,b1)(a2,b2) = (a1 + (-1)^{b1} a2, b1 + b2)
    let idx = |a: usize, b: usize| b * 4 + a + 1;
    let mut table = vec![vec![0; 8]; 8];
    for a1 in 0..4 {
        for b1 in 0..2 {
            for a2 in 0..4 {
                for b2 in 0..2 {
                    let a = if b1 == 0 { (a1 + a2) % 4 } else { (a1 + 4 - a2) % 4 };
                    table[idx(a1, b1) - 1][idx(a2, b2) - 1] = idx(a, (b1 + b2) % 2);
                }
            }
        }
    }
    let names = ["e", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Group::validate(table, Some(names)).expect("dihedral table is a group")
}

/// Order: 1, i, -1, -i, j, k, -j, -k with i^2 = j^2 = -1, j i = -k.
fn quaternion8() -> Group {
    // element (a, b) = i^a j^b; j i^a = i^{-a} j and j^2 = i^2.
    let idx = |a: usize, b: usize| b * 4 + a + 1;
    let mut table = vec![vec![0; 8]; 8];
    for a1 in 0..4 {
        for b1 in 0..2 {
            for a2 in 0..4 {
                for b2 in 0..2 {
                    let mut a = if b1 == 0 {
                        (a1 + a2) % 4
                    } else {
                        (a1 + 4 - a2) % 4
                    };
                    if b1 == 1 && b2 == 1 {
                        a = (a + 2) % 4;
                    }
                    table[idx(a1, b1) - 1][idx(a2, b2) - 1] = idx(a, (b1 + b2) % 2);
                }
            }
        }
    }
    let names = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Group::validate(table, Some(names)).expect("quaternion table is a group")
}

/// Order: e, (12), (13), (23), (123), (132); product is composition,
/// apply the right factor first.
fn sym3() -> Group {
    let elems: [[usize; 3]; 6] = [
        [1, 2, 3],
        [2, 1, 3],
        [3, 2, 1],
        [1, 3, 2],
        [2, 3, 1], // (123): 1->2, 2->3, 3->1
        [3, 1, 2], // (132)
    ];
    let compose = |f: &[usize; 3], g: &[usize; 3]| -> [usize; 3] {
        [f[g[0] - 1], f[g[1] - 1], f[g[2] - 1]]
    };
    let table = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let prod = compose(&elems[a], &elems[b]);
                    elems.iter().position(|e| *e == prod).unwrap() + 1
                })
                .collect()
        })
        .collect();
    let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Group::validate(table, Some(names)).expect("symmetric group table is a group")
}

/// Catalog names accepted by [`catalog`], in enumeration order per order.
pub const CATALOG_NAMES: [&str; 14] = [
    "Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2^3", "D4", "Q8",
];

/// Looks up a catalog group by name (case-insensitive).
///
/// Element orderings are fixed: cyclic groups list powers of the generator,
/// products are lexicographic with the first factor major, `D4` is
/// `e, r, r^2, r^3, s, rs, r^2s, r^3s`, and `Q8` is
/// `1, i, -1, -i, j, k, -j, -k`.
pub fn catalog(name: &str) -> Result<Group, GroupError> {
    match name.to_ascii_uppercase().as_str() {
        "Z1" => Ok(cyclic(1)),
        "Z2" => Ok(cyclic(2)),
        "Z3" => Ok(cyclic(3)),
        "Z4" => Ok(cyclic(4)),
        "Z5" => Ok(cyclic(5)),
        "Z6" => Ok(cyclic(6)),
        "Z7" => Ok(cyclic(7)),
        "Z8" => Ok(cyclic(8)),
        "V4" => Ok(direct_product(&cyclic(2), &cyclic(2))),
        "S3" => Ok(sym3()),
        "D4" => Ok(dihedral4()),
        "Q8" => Ok(quaternion8()),
        "Z2XZ4" => Ok(direct_product(&cyclic(2), &cyclic(4))),
        "Z2^3" | "Z2XZ2XZ2" => Ok(direct_product(
            &direct_product(&cyclic(2), &cyclic(2)),
            &cyclic(2),
        )),
        _ => Err(GroupError::UnknownName(name.to_string())),
    }
}

/// The left-translation permutations `sigma_j(k) = index of g_j g_k`.
pub fn cayley_embed(g: &Group) -> Vec<Permutation> {
    (1..=g.n())
        .map(|j| Permutation::new(g.table()[j - 1].clone()))
        .collect()
}

/// Identity-preserving isomorphism search by lexicographic backtracking.
///
/// Returns the first bijection found with `phi(ab) = phi(a)phi(b)`, or `None`.
pub fn brute_iso(g: &Group, h: &Group) -> Option<Permutation> {
    if g.n() != h.n() {
        return None;
    }
    let n = g.n();
    let g_orders: Vec<usize> = (1..=n).map(|a| g.element_order(a)).collect();
    let h_orders: Vec<usize> = (1..=n).map(|a| h.element_order(a)).collect();
    {
        let mut go = g_orders.clone();
        let mut ho = h_orders.clone();
        go.sort_unstable();
        ho.sort_unstable();
        if go != ho {
            return None;
        }
    }

    fn consistent(g: &Group, h: &Group, phi: &[usize], a: usize) -> bool {
        let n = g.n();
        for b in 1..=n {
            if phi[b] == 0 {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                let prod = g.mul(x, y);
                if phi[prod] != 0 && h.mul(phi[x], phi[y]) != phi[prod] {
                    return false;
                }
            }
        }
        true
    }

    fn rec(g: &Group, h: &Group, phi: &mut Vec<usize>, used: &mut Vec<bool>, a: usize,
           g_orders: &[usize], h_orders: &[usize]) -> bool {
        let n = g.n();
        if a > n {
            return true;
        }
        for img in 2..=n {
            if used[img] || g_orders[a - 1] != h_orders[img - 1] {
                continue;
            }
            phi[a] = img;
            used[img] = true;
            if consistent(g, h, phi, a) && rec(g, h, phi, used, a + 1, g_orders, h_orders) {
                return true;
            }
            phi[a] = 0;
            used[img] = false;
        }
        false
    }

    let mut phi = vec![0; n + 1];
    let mut used = vec![false; n + 1];
    phi[1] = 1;
    used[1] = true;
    if rec(g, h, &mut phi, &mut used, 2, &g_orders, &h_orders) {
        Some(Permutation::new(phi[1..].to_vec()))
    } else {
        None
    }
}

fn enumerate_with_names(n: usize) -> Result<Vec<(&'static str, Group)>, GroupError> {
    let names: &[&'static str] = match n {
        1 => &["Z1"],
        2 => &["Z2"],
        3 => &["Z3"],
        4 => &["Z4", "V4"],
        5 => &["Z5"],
        6 => &["Z6", "S3"],
        7 => &["Z7"],
        8 => &["Z8", "Z2xZ4", "Z2^3", "D4", "Q8"],
        _ => return Err(GroupError::UnsupportedOrder(n)),
    };
    Ok(names
        .iter()
        .map(|&name| (name, catalog(name).expect("catalog covers enumeration")))
        .collect())
}

/// All groups of order `n <= 8` up to isomorphism, in catalog order.
pub fn enumerate_groups(n: usize) -> Result<Vec<Group>, GroupError> {
    Ok(enumerate_with_names(n)?.into_iter().map(|(_, g)| g).collect())
}

/// Catalog names matching [`enumerate_groups`] order.
pub fn enumeration_names(n: usize) -> Result<Vec<&'static str>, GroupError> {
    Ok(enumerate_with_names(n)?.into_iter().map(|(s, _)| s).collect())
}

/// Exhaustive oracle: every identity-first associative Latin square of order
/// `n <= 6`, i.e. every group table with that enumeration convention.
///
/// This is the verification mode backing [`enumerate_groups`]; the reduced
/// Latin square counts stay tiny through order 6 (4 at order 4, 56 at order 5,
/// 9408 at order 6) so a plain backtrack plus a final validation pass is fine.
pub fn exhaustive_tables(n: usize) -> Result<Vec<Group>, GroupError> {
    if n == 0 || n > 6 {
        return Err(GroupError::UnsupportedOrder(n));
    }
    let mut table = vec![vec![0usize; n]; n];
    for k in 0..n {
        table[0][k] = k + 1;
        table[k][0] = k + 1;
    }
    let mut out = Vec::new();
    fn fill(table: &mut Vec<Vec<usize>>, n: usize, r: usize, c: usize, out: &mut Vec<Group>) {
        if r == n {
            if let Ok(g) = Group::validate(table.clone(), None) {
                out.push(g);
            }
            return;
        }
        let (nr, nc) = if c + 1 == n { (r + 1, 1) } else { (r, c + 1) };
        'cand: for v in 1..=n {
            for k in 0..c {
                if table[r][k] == v {
                    continue 'cand;
                }
            }
            for k in 0..r {
                if table[k][c] == v {
                    continue 'cand;
                }
            }
            table[r][c] = v;
            fill(table, n, nr, nc, out);
            table[r][c] = 0;
        }
    }
    if n == 1 {
        out.push(Group::validate(table, None).expect("trivial group"));
    } else {
        fill(&mut table, n, 1, 1, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn parse_cyclic_group_file() {
        let text = r#"{"n":4,"table":[[1,2,3,4],[2,3,4,1],[3,4,1,2],[4,1,2,3]]}"#;
        let g = parse_group(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.mul(2, 2), 3);
        assert_eq!(g.name(3), "g3");
        assert!(brute_iso(&g, &catalog("Z4").unwrap()).is_some());
    }

    #[test]
    fn parse_rejects_identity_violation() {
        // table[1][2] = 3
        let text = r#"{"n":4,"table":[[1,3,2,4],[2,3,4,1],[3,4,1,2],[4,1,2,3]]}"#;
        match parse_group(text).unwrap_err() {
            GroupError::Invalid(violations) => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, Violation::IdentityRow { k: 2, found: 3 })));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_bad_json() {
        assert!(matches!(
            parse_group("not json").unwrap_err(),
            GroupError::Malformed(_)
        ));
        assert!(matches!(
            parse_group(r#"{"n":3,"table":[[1,2,3],[2,3,1]]}"#).unwrap_err(),
            GroupError::Malformed(_)
        ));
        // ragged row
        assert!(matches!(
            parse_group(r#"{"n":2,"table":[[1,2],[2]]}"#).unwrap_err(),
            GroupError::Malformed(_)
        ));
        assert!(matches!(
            parse_group(r#"{"n":0,"table":[]}"#).unwrap_err(),
            GroupError::Malformed(_)
        ));
    }

    // A 5x5 identity-first Latin square that fails associativity, found by
    // scanning `exhaustive-style` candidates; frozen here with its witness.
    #[test]
    fn validate_reports_non_associative_latin_square() {
        // Search for the lexicographically first non-associative reduced
        // Latin square of order 5 (the oracle), then re-assert the frozen
        // outcome so regressions are visible.
        let mut table = vec![vec![0usize; 5]; 5];
        for k in 0..5 {
            table[0][k] = k + 1;
            table[k][0] = k + 1;
        }
        fn search(table: &mut Vec<Vec<usize>>, r: usize, c: usize) -> bool {
            if r == 5 {
                return Group::validate(table.clone(), None).is_err();
            }
            let (nr, nc) = if c + 1 == 5 { (r + 1, 1) } else { (r, c + 1) };
            'cand: for v in 1..=5 {
                for k in 0..c {
                    if table[r][k] == v {
                        continue 'cand;
                    }
                }
                for k in 0..r {
                    if table[k][c] == v {
                        continue 'cand;
                    }
                }
                table[r][c] = v;
                if search(table, nr, nc) {
                    return true;
                }
                table[r][c] = 0;
            }
            false
        }
        assert!(search(&mut table, 1, 1), "a non-associative square exists");
        let violations = Group::validate(table.clone(), None).unwrap_err();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::NotAssociative { .. })));
        // Frozen: the first square the scan reaches, and a concrete witness.
        assert_eq!(
            table,
            vec![
                vec![1, 2, 3, 4, 5],
                vec![2, 1, 4, 5, 3],
                vec![3, 4, 5, 1, 2],
                vec![4, 5, 2, 3, 1],
                vec![5, 3, 1, 2, 4],
            ]
        );
        assert!(violations.contains(&Violation::NotAssociative { a: 2, b: 2, c: 3 }));
    }

    #[test]
    fn validate_accepts_klein() {
        let v4 = catalog("V4").unwrap();
        assert!(Group::validate(v4.table().to_vec(), None).is_ok());
    }

    #[test]
    fn validate_rejects_swapped_rows() {
        let z4 = catalog("Z4").unwrap();
        let mut table = z4.table().to_vec();
        table.swap(1, 2);
        let violations = Group::validate(table, None).unwrap_err();
        assert!(violations.iter().any(|v| matches!(
            v,
            Violation::IdentityColumn { .. } | Violation::RowNotPermutation { .. }
        )));
    }

    #[test]
    fn catalog_basics() {
        let z4 = catalog("Z4").unwrap();
        assert_eq!(z4.mul(2, 2), 3);

        let d4 = catalog("D4").unwrap();
        assert_eq!(d4.n(), 8);
        assert!(!d4.is_abelian());
        // s r = r^3 s
        assert_eq!(d4.mul(5, 2), 8);

        let q8 = catalog("Q8").unwrap();
        assert!(!q8.is_abelian());
        let order_two: Vec<usize> = (1..=8).filter(|&a| q8.element_order(a) == 2).collect();
        assert_eq!(order_two, vec![3], "Q8 has exactly one element of order 2");

        assert!(matches!(
            catalog("Z9").unwrap_err(),
            GroupError::UnknownName(_)
        ));
    }

    #[test]
    fn catalog_groups_validate_and_embed() {
        for name in CATALOG_NAMES {
            let g = catalog(name).unwrap();
            assert!(Group::validate(g.table().to_vec(), None).is_ok(), "{name}");
            let sigmas = cayley_embed(&g);
            assert!(sigmas[0].is_identity(), "{name}: sigma_1 = id");
            for j in 1..=g.n() {
                assert_eq!(sigmas[j - 1].apply(1), j, "{name}: sigma_j(1) = j");
            }
            for j in 1..=g.n() {
                for k in 1..=g.n() {
                    assert_eq!(
                        sigmas[j - 1].compose(&sigmas[k - 1]),
                        sigmas[g.mul(j, k) - 1],
                        "{name}: homomorphism at ({j}, {k})"
                    );
                }
            }
        }
    }

    #[test]
    fn cayley_sigma2_examples() {
        let z4 = catalog("Z4").unwrap();
        assert_eq!(cayley_embed(&z4)[1], Permutation::from_cycles(4, &[&[1, 2, 3, 4]]));
        let v4 = catalog("V4").unwrap();
        assert_eq!(
            cayley_embed(&v4)[1],
            Permutation::from_cycles(4, &[&[1, 2], &[3, 4]])
        );
    }

    #[test]
    fn cycle_decompose_examples() {
        let cd = cycle_decompose(&Permutation::from_cycles(4, &[&[1, 2, 3, 4]])).unwrap();
        assert_eq!(cd.anchor_cycle, vec![1, 2, 3, 4]);
        assert_eq!(cd.leaders, Vec::<usize>::new());
        assert_eq!(cd.k, 0);

        let cd = cycle_decompose(&Permutation::from_cycles(4, &[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(cd.anchor_cycle, vec![1, 2]);
        assert_eq!(cd.leaders, vec![3]);
        assert_eq!(cd.k, 1);

        let s3 = catalog("S3").unwrap();
        let sigma2 = cayley_embed(&s3)[1].clone();
        assert_eq!(
            sigma2,
            Permutation::from_cycles(6, &[&[1, 2], &[3, 6], &[4, 5]])
        );
        let cd = cycle_decompose(&sigma2).unwrap();
        assert_eq!(cd.anchor_cycle, vec![1, 2]);
        assert_eq!(cd.leaders, vec![3, 4]);
        assert_eq!(cd.k, 2);
    }

    #[test]
    fn cycle_decompose_rejects_wrong_start() {
        let err = cycle_decompose(&Permutation::identity(4)).unwrap_err();
        assert_eq!(err, GroupError::NotDerangedAtOne(1));
    }

    #[test]
    fn brute_iso_examples() {
        let z4 = catalog("Z4").unwrap();
        let v4 = catalog("V4").unwrap();
        assert!(brute_iso(&z4, &v4).is_none());

        let rho = Permutation::new(vec![1, 3, 4, 2]);
        let relabeled = z4.relabel(&rho);
        let phi = brute_iso(&z4, &relabeled).expect("relabeling is an isomorphism");
        for a in 1..=4 {
            for b in 1..=4 {
                assert_eq!(
                    phi.apply(z4.mul(a, b)),
                    relabeled.mul(phi.apply(a), phi.apply(b))
                );
            }
        }

        let d4 = catalog("D4").unwrap();
        let q8 = catalog("Q8").unwrap();
        // Independent oracle first: the element-order multisets differ.
        let mut d4_orders: Vec<usize> = (1..=8).map(|a| d4.element_order(a)).collect();
        let mut q8_orders: Vec<usize> = (1..=8).map(|a| q8.element_order(a)).collect();
        d4_orders.sort_unstable();
        q8_orders.sort_unstable();
        assert_ne!(d4_orders, q8_orders);
        assert!(brute_iso(&d4, &q8).is_none());
    }

    #[test]
    fn brute_iso_symmetric_over_catalog() {
        let groups: Vec<Group> = CATALOG_NAMES.iter().map(|n| catalog(n).unwrap()).collect();
        for g in &groups {
            for h in &groups {
                assert_eq!(brute_iso(g, h).is_some(), brute_iso(h, g).is_some());
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_groups(1).unwrap().len(), 1);
        assert_eq!(enumerate_groups(4).unwrap().len(), 2);
        assert_eq!(enumerate_groups(8).unwrap().len(), 5);
        assert!(matches!(
            enumerate_groups(9).unwrap_err(),
            GroupError::UnsupportedOrder(9)
        ));
    }

    #[test]
    fn enumerate_members_pairwise_non_isomorphic() {
        for n in 1..=8 {
            let groups = enumerate_groups(n).unwrap();
            for (i, g) in groups.iter().enumerate() {
                for h in &groups[i + 1..] {
                    assert!(brute_iso(g, h).is_none());
                }
            }
        }
    }

    #[test]
    fn exhaustive_tables_match_enumeration_small() {
        // Orders 1..=5 here; order 6 runs in the integration suite.
        for n in 1..=5 {
            let tables = exhaustive_tables(n).unwrap();
            let reps = enumerate_groups(n).unwrap();
            for t in &tables {
                let matches: Vec<usize> = reps
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| brute_iso(t, r).is_some())
                    .map(|(i, _)| i)
                    .collect();
                assert_eq!(matches.len(), 1, "each table matches exactly one class");
            }
            for r in &reps {
                assert!(tables.iter().any(|t| brute_iso(t, r).is_some()));
            }
        }
    }

    fn unrank_fixing_first(n: usize, mut r: usize) -> Permutation {
        let mut rest: Vec<usize> = (2..=n).collect();
        let mut images = vec![1];
        for pos in 0..n - 1 {
            let mut fact = 1;
            for k in 1..(n - 1 - pos) {
                fact *= k;
            }
            let i = r / fact;
            r %= fact;
            images.push(rest.remove(i % rest.len()));
        }
        Permutation::new(images)
    }

    proptest! {
        #[test]
        fn cycles_partition_and_reconstruct(n in 2usize..=8, seed in 0usize..40320) {
            // arbitrary permutation with sigma(1) = 2: conjugate a derangement
            // start from a permutation fixing 1, then force 1 -> 2 by a swap
            let p = unrank_fixing_first(n, seed);
            let mut images = p.images().to_vec();
            let pos_of_two = images.iter().position(|&v| v == 2).unwrap();
            images.swap(0, pos_of_two);
            let sigma = Permutation::new(images);
            prop_assume!(sigma.apply(1) == 2);
            let cd = cycle_decompose(&sigma).unwrap();

            let mut all: Vec<usize> = cd.cycles.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (1..=n).collect::<Vec<_>>());

            let mut rebuilt: Vec<usize> = (1..=n).collect();
            for cycle in &cd.cycles {
                for (i, &v) in cycle.iter().enumerate() {
                    rebuilt[v - 1] = cycle[(i + 1) % cycle.len()];
                }
            }
            prop_assert_eq!(Permutation::new(rebuilt), sigma);
            prop_assert_eq!(cd.k + 1, cd.cycles.len());
            for (lead, cyc) in cd.leaders.iter().zip(cd.cycles[1..].iter()) {
                prop_assert_eq!(*lead, *cyc.iter().min().unwrap());
            }
        }

        #[test]
        fn compose_inverse_roundtrip(n in 1usize..=7, seed in 0usize..5040) {
            let p = unrank_fixing_first(n, seed);
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }
    }

    #[test]
    fn set_of_identity_fixing_orderings() {
        let perms = permutations_fixing_first(4);
        assert_eq!(perms.len(), 6);
        assert!(perms.iter().all(|p| p.apply(1) == 1));
        let set: BTreeSet<_> = perms.iter().collect();
        assert_eq!(set.len(), 6);
        // lexicographic order of images
        assert_eq!(perms[0], Permutation::new(vec![1, 2, 3, 4]));
        assert_eq!(perms[5], Permutation::new(vec![1, 4, 3, 2]));
    }

    #[test]
    fn group_json_roundtrip() {
        for name in CATALOG_NAMES {
            let g = catalog(name).unwrap();
            let parsed = parse_group(&g.to_json()).unwrap();
            assert_eq!(parsed, g);
        }
    }
}
