//! Two-column and hook shapes, fillings, row preference and straightening.
//!
//! Rows are counted bottom-up (French convention). A [`Cell`] is zero-indexed;
//! a [`RowLabel`] is the 1-indexed row number used in factor labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linfactor::{rat, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("two-column shape needs a >= b (got a={a}, b={b})")]
    TwoColumn { a: usize, b: usize },
    #[error("hook needs n > m (got n={n}, m={m})")]
    Hook { n: usize, m: usize },
    #[error("row lengths must be weakly decreasing and positive: {0}")]
    NotPartition(String),
    #[error("{0} is neither a two-column shape nor a hook")]
    OutOfScope(String),
    #[error("cannot parse shape '{0}'")]
    Syntax(String),
}

/// Which straightening and preference rules apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeKind {
    TwoColumn,
    Hook,
}

/// `TwoColumn { a, b }` is `(2^b, 1^(a-b))`; `Hook { n, m }` is `(n-m, 1^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    TwoColumn { a: usize, b: usize },
    Hook { n: usize, m: usize },
}

/// Zero-indexed cell: `row` counts from the bottom, `col` from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// 1-indexed row number, bottom row = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowLabel(pub usize);

impl RowLabel {
    pub fn from_index(row: usize) -> Self {
        RowLabel(row + 1)
    }
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl Shape {
    pub fn two_column(a: usize, b: usize) -> Result<Shape, ShapeError> {
        if a < b {
            return Err(ShapeError::TwoColumn { a, b });
        }
        Ok(Shape::TwoColumn { a, b })
    }

    pub fn hook(n: usize, m: usize) -> Result<Shape, ShapeError> {
        if n == 0 || m >= n {
            return Err(ShapeError::Hook { n, m });
        }
        Ok(Shape::Hook { n, m })
    }

    /// Picks the two-column reading when both apply.
    pub fn from_row_lengths(rows: &[usize]) -> Result<Shape, ShapeError> {
        let text = format!("{rows:?}");
        if rows.is_empty() || rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotPartition(text));
        }
        if rows[0] <= 2 {
            let b = rows.iter().filter(|&&l| l == 2).count();
            return Shape::two_column(rows.len(), b);
        }
        if rows[1..].iter().all(|&l| l == 1) {
            return Shape::hook(rows.iter().sum(), rows.len() - 1);
        }
        Err(ShapeError::OutOfScope(text))
    }

    /// Same shape read with hook rules, when it is a hook.
    pub fn as_hook(&self) -> Option<Shape> {
        let rows = self.row_lengths();
        if rows[1..].iter().all(|&l| l == 1) {
            Some(Shape::Hook { n: self.size(), m: rows.len() - 1 })
        } else {
            None
        }
    }

    /// Same shape read with two-column rules, when it fits in two columns.
    pub fn as_two_column(&self) -> Option<Shape> {
        let rows = self.row_lengths();
        if rows[0] <= 2 {
            Some(Shape::TwoColumn { a: rows.len(), b: rows.iter().filter(|&&l| l == 2).count() })
        } else {
            None
        }
    }

    pub fn kind(&self) -> ShapeKind {
        match self {
            Shape::TwoColumn { .. } => ShapeKind::TwoColumn,
            Shape::Hook { .. } => ShapeKind::Hook,
        }
    }

    pub fn size(&self) -> usize {
        match *self {
            Shape::TwoColumn { a, b } => a + b,
            Shape::Hook { n, .. } => n,
        }
    }

    /// Row lengths bottom-up; the empty two-column shape has no rows.
    pub fn row_lengths(&self) -> Vec<usize> {
        match *self {
            Shape::TwoColumn { a, b } => (0..a).map(|i| if i < b { 2 } else { 1 }).collect(),
            Shape::Hook { n, m } => std::iter::once(n - m).chain(std::iter::repeat(1).take(m)).collect(),
        }
    }

    pub fn num_rows(&self) -> usize {
        match *self {
            Shape::TwoColumn { a, .. } => a,
            Shape::Hook { m, .. } => m + 1,
        }
    }

    /// Length of the bottom row.
    pub fn width(&self) -> usize {
        self.row_lengths().first().copied().unwrap_or(0)
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.row_lengths()
            .iter()
            .enumerate()
            .flat_map(|(p, &len)| (0..len).map(move |q| Cell::new(p, q)))
            .collect()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.row_lengths().get(cell.row).is_some_and(|&l| cell.col < l)
    }

    /// `sum (i-1) mu_i`: top x-degree, recorded by `t`.
    pub fn n_mu(&self) -> u32 {
        self.cells().iter().map(|c| c.row as u32).sum()
    }

    /// The same statistic for the conjugate shape: top y-degree, recorded by `q`.
    pub fn n_mu_conjugate(&self) -> u32 {
        self.cells().iter().map(|c| c.col as u32).sum()
    }

    pub fn is_single_row(&self) -> bool {
        self.num_rows() == 1
    }
}

impl fmt::Display for Shape {
    /// Row lengths largest first, e.g. `2,2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.row_lengths().iter().map(|l| l.to_string()).collect();
        if rows.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", rows.join(","))
        }
    }
}

impl FromStr for Shape {
    type Err = ShapeError;

    /// Accepts `2,2,1` and the power shorthand `2^2,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || ShapeError::Syntax(s.to_string());
        let mut rows = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (len, reps) = match part.split_once('^') {
                Some((l, r)) => (l.trim(), r.trim().parse::<usize>().map_err(|_| syntax())?),
                None => (part, 1),
            };
            let len: usize = len.parse().map_err(|_| syntax())?;
            rows.extend(std::iter::repeat(len).take(reps));
        }
        Shape::from_row_lengths(&rows)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("alpha values must be pairwise distinct")]
    AlphaRepeated,
    #[error("beta values must be pairwise distinct")]
    BetaRepeated,
    #[error("need at least {need} alpha values, got {got}")]
    TooFewAlpha { need: usize, got: usize },
    #[error("need at least {need} beta values, got {got}")]
    TooFewBeta { need: usize, got: usize },
}

/// Distinct evaluation constants `alpha_1..` and `beta_1..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameters {
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

impl Parameters {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self, ParamError> {
        if alpha.iter().collect::<BTreeSet<_>>().len() != alpha.len() {
            return Err(ParamError::AlphaRepeated);
        }
        if beta.iter().collect::<BTreeSet<_>>().len() != beta.len() {
            return Err(ParamError::BetaRepeated);
        }
        Ok(Parameters { alpha, beta })
    }

    /// `alpha_i = i`, `beta_j = j`.
    pub fn default_for(shape: &Shape) -> Self {
        let (na, nb) = Self::needed(shape);
        Parameters {
            alpha: (1..=na as i64).map(rat).collect(),
            beta: (1..=nb as i64).map(rat).collect(),
        }
    }

    /// Seeded distinct rationals `p/q` with `|p| <= 60`, `1 <= q <= 7`.
    pub fn random(shape: &Shape, seed: u64) -> Self {
        let (na, nb) = Self::needed(shape);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k: usize| {
            let mut seen = BTreeSet::new();
            while seen.len() < k {
                let p: i64 = rng.gen_range(-60..=60);
                let q: i64 = rng.gen_range(1..=7);
                seen.insert(Rational::new(p.into(), q.into()));
            }
            // keep draw order deterministic but not sorted
            let mut v: Vec<Rational> = seen.into_iter().collect();
            let len = v.len();
            for i in (1..len).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            v
        };
        let alpha = draw(na);
        let beta = draw(nb);
        Parameters { alpha, beta }
    }

    fn needed(shape: &Shape) -> (usize, usize) {
        (shape.size().max(shape.num_rows()).max(1), shape.width().max(2))
    }

    pub fn check_for(&self, shape: &Shape) -> Result<(), ParamError> {
        let (na, nb) = (shape.num_rows().max(1), shape.width().max(1));
        if self.alpha.len() < na {
            return Err(ParamError::TooFewAlpha { need: na, got: self.alpha.len() });
        }
        if self.beta.len() < nb {
            return Err(ParamError::TooFewBeta { need: nb, got: self.beta.len() });
        }
        Ok(())
    }

    /// `alpha_j`, 1-indexed.
    pub fn alpha(&self, j: usize) -> &Rational {
        &self.alpha[j - 1]
    }

    /// `beta_j`, 1-indexed.
    pub fn beta(&self, j: usize) -> &Rational {
        &self.beta[j - 1]
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn betas(&self) -> &[Rational] {
        &self.beta
    }
}

/// Where an entry of a partial filling sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Placement {
    Cell(Cell),
    /// Row fixed, column not yet decided.
    Pending(usize),
}

impl Placement {
    pub fn row(&self) -> usize {
        match *self {
            Placement::Cell(c) => c.row,
            Placement::Pending(r) => r,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FillingError {
    #[error("cell ({}, {}) is not in the shape", .0.row, .0.col)]
    OutsideShape(Cell),
    #[error("cell ({}, {}) is filled twice", .0.row, .0.col)]
    Collision(Cell),
    #[error("row {0} is over-full")]
    RowOverfull(usize),
    #[error("entries must be distinct integers in 1..=n")]
    BadEntries,
    #[error("cannot parse filling '{0}'")]
    Syntax(String),
    #[error("row structure of '{text}' does not match shape {shape}")]
    ShapeMismatch { text: String, shape: Shape },
}

/// A partial, partially sorted filling of a shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    shape: Shape,
    placed: BTreeMap<usize, Placement>,
}

impl Filling {
    pub fn empty(shape: Shape) -> Self {
        Filling { shape, placed: BTreeMap::new() }
    }

    /// Standard filling from `cells[i]` = cell of entry `i + 1`.
    pub fn standard(shape: Shape, cells: &[Cell]) -> Result<Self, FillingError> {
        if cells.len() != shape.size() {
            return Err(FillingError::BadEntries);
        }
        let mut f = Filling::empty(shape);
        for (i, &c) in cells.iter().enumerate() {
            f = f.with(i + 1, Placement::Cell(c))?;
        }
        Ok(f)
    }

    /// Returns a new filling with `entry` placed.
    pub fn with(&self, entry: usize, at: Placement) -> Result<Self, FillingError> {
        if entry == 0 || entry > self.shape.size() || self.placed.contains_key(&entry) {
            return Err(FillingError::BadEntries);
        }
        let lens = self.shape.row_lengths();
        match at {
            Placement::Cell(c) => {
                if !self.shape.contains(c) {
                    return Err(FillingError::OutsideShape(c));
                }
                if self.entry_at(c).is_some() {
                    return Err(FillingError::Collision(c));
                }
            }
            Placement::Pending(r) => {
                if r >= lens.len() {
                    return Err(FillingError::OutsideShape(Cell::new(r, 0)));
                }
            }
        }
        let row = at.row();
        if self.row_entries(row).len() >= lens[row] {
            return Err(FillingError::RowOverfull(row));
        }
        let mut out = self.clone();
        out.placed.insert(entry, at);
        Ok(out)
    }

    /// Fixes the column of a pending entry.
    pub fn fix_column(&self, entry: usize, col: usize) -> Result<Self, FillingError> {
        let row = match self.placed.get(&entry) {
            Some(Placement::Pending(r)) => *r,
            _ => return Err(FillingError::BadEntries),
        };
        let c = Cell::new(row, col);
        if !self.shape.contains(c) {
            return Err(FillingError::OutsideShape(c));
        }
        if self.entry_at(c).is_some() {
            return Err(FillingError::Collision(c));
        }
        let mut out = self.clone();
        out.placed.insert(entry, Placement::Cell(c));
        Ok(out)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.placed.len() == self.shape.size()
            && self.placed.values().all(|p| matches!(p, Placement::Cell(_)))
    }

    pub fn placement(&self, entry: usize) -> Option<Placement> {
        self.placed.get(&entry).copied()
    }

    pub fn cell_of(&self, entry: usize) -> Option<Cell> {
        match self.placed.get(&entry)? {
            Placement::Cell(c) => Some(*c),
            Placement::Pending(_) => None,
        }
    }

    pub fn row_of(&self, entry: usize) -> Option<usize> {
        self.placed.get(&entry).map(|p| p.row())
    }

    pub fn entry_at(&self, cell: Cell) -> Option<usize> {
        self.placed
            .iter()
            .find(|(_, p)| **p == Placement::Cell(cell))
            .map(|(&e, _)| e)
    }

    /// Entries placed in row `row`, in increasing order.
    pub fn row_entries(&self, row: usize) -> Vec<usize> {
        self.placed.iter().filter(|(_, p)| p.row() == row).map(|(&e, _)| e).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Placement)> + '_ {
        self.placed.iter().map(|(&e, &p)| (e, p))
    }

    /// Occupancy of each original row, ignoring entries `<= k`.
    pub fn row_views_above(&self, k: usize) -> Vec<RowView> {
        self.shape
            .row_lengths()
            .iter()
            .enumerate()
            .map(|(r, &len)| RowView {
                len,
                occupants: self.row_entries(r).into_iter().filter(|&e| e > k).collect(),
            })
            .collect()
    }

    /// Row preference with respect to `k`, most preferred first.
    pub fn row_preference(&self, k: usize) -> Vec<RowLabel> {
        row_preference(&self.row_views_above(k), self.shape.kind(), k)
            .into_iter()
            .map(RowLabel::from_index)
            .collect()
    }

    /// Entries of the bottom row read left to right (standard fillings).
    pub fn bottom_word(&self) -> Vec<usize> {
        let mut cells: Vec<(usize, usize)> = self
            .placed
            .iter()
            .filter_map(|(&e, p)| match p {
                Placement::Cell(c) if c.row == 0 => Some((c.col, e)),
                _ => None,
            })
            .collect();
        cells.sort();
        cells.into_iter().map(|(_, e)| e).collect()
    }

    /// Reads a filling such as `2,4/6,1/5,3` on a given shape.
    pub fn parse_on(shape: Shape, text: &str) -> Result<Self, FillingError> {
        let syntax = || FillingError::Syntax(text.to_string());
        let lens = shape.row_lengths();
        let rows: Vec<&str> = text.trim().split('/').collect();
        if rows.len() != lens.len() {
            return Err(FillingError::ShapeMismatch { text: text.to_string(), shape });
        }
        let mut f = Filling::empty(shape);
        for (r, row) in rows.iter().enumerate() {
            let items: Vec<&str> = row.split(',').map(str::trim).collect();
            if items.len() != lens[r] {
                return Err(FillingError::ShapeMismatch { text: text.to_string(), shape });
            }
            for (c, item) in items.iter().enumerate() {
                if *item == "." {
                    continue;
                }
                let (num, pending) = match item.strip_suffix('?') {
                    Some(v) => (v, true),
                    None => (*item, false),
                };
                let e: usize = num.parse().map_err(|_| syntax())?;
                let at = if pending { Placement::Pending(r) } else { Placement::Cell(Cell::new(r, c)) };
                f = f.with(e, at)?;
            }
        }
        Ok(f)
    }

    /// Parses a standard filling and infers the shape from the row lengths.
    pub fn parse(text: &str) -> Result<Self, FillingError> {
        let lens: Vec<usize> = text.trim().split('/').map(|r| r.split(',').count()).collect();
        let shape = Shape::from_row_lengths(&lens).map_err(|_| FillingError::Syntax(text.to_string()))?;
        Filling::parse_on(shape, text)
    }

    /// Orbit point `(alpha_{p_i+1}..., beta_{q_i+1}...)`.
    pub fn orbit_point(&self, params: &Parameters) -> Vec<Rational> {
        orbit_point(self, params)
    }
}

impl fmt::Display for Filling {
    /// Rows bottom-to-top separated by `/`; pending entries carry `?`, empty cells are `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lens = self.shape.row_lengths();
        let mut rows = Vec::with_capacity(lens.len());
        for (r, &len) in lens.iter().enumerate() {
            let mut items = vec![".".to_string(); len];
            let mut pending: Vec<usize> = Vec::new();
            for (&e, p) in &self.placed {
                match p {
                    Placement::Cell(c) if c.row == r => items[c.col] = e.to_string(),
                    Placement::Pending(pr) if *pr == r => pending.push(e),
                    _ => {}
                }
            }
            pending.sort_unstable_by(|a, b| b.cmp(a));
            let mut pending = pending.into_iter();
            for it in items.iter_mut() {
                if it == "." {
                    match pending.next() {
                        Some(e) => *it = format!("{e}?"),
                        None => break,
                    }
                }
            }
            rows.push(items.join(","));
        }
        write!(f, "{}", rows.join("/"))
    }
}

/// One row seen by the preference rule: its length and the entries counted as present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowView {
    pub len: usize,
    pub occupants: Vec<usize>,
}

/// Row preference with respect to `k` over `rows` (bottom-up), most preferred first.
///
/// Entries `<= k` are treated as absent. Returned values are zero-indexed rows.
pub fn row_preference(rows: &[RowView], kind: ShapeKind, k: usize) -> Vec<usize> {
    let occ = |r: &RowView| r.occupants.iter().filter(|&&e| e > k).count();
    match kind {
        ShapeKind::TwoColumn => {
            let mut empty2 = Vec::new();
            let mut empty1 = Vec::new();
            let mut single = Vec::new();
            for (i, r) in rows.iter().enumerate().rev() {
                let o = occ(r);
                match (r.len, o) {
                    (2, 0) => empty2.push(i),
                    (1, 0) => empty1.push(i),
                    (2, 1) => single.push((*r.occupants.iter().filter(|&&e| e > k).max().unwrap(), i)),
                    _ => {}
                }
            }
            single.sort_by(|a, b| b.cmp(a));
            empty2.into_iter().chain(empty1).chain(single.into_iter().map(|(_, i)| i)).collect()
        }
        ShapeKind::Hook => {
            let mut out = Vec::new();
            let free = rows.first().map(|r| r.len - occ(r)).unwrap_or(0);
            if free >= 2 {
                out.push(0);
            }
            for i in (1..rows.len()).rev() {
                if occ(&rows[i]) == 0 {
                    out.push(i);
                }
            }
            if free == 1 {
                out.push(0);
            }
            out
        }
    }
}

/// Orbit point of a standard filling: coordinate `i` is `alpha_{p_i+1}`,
/// coordinate `n+i` is `beta_{q_i+1}`.
pub fn orbit_point(s: &Filling, params: &Parameters) -> Vec<Rational> {
    let n = s.shape().size();
    let mut pt = vec![Rational::zero(); 2 * n];
    for (e, p) in s.entries() {
        let c = match p {
            Placement::Cell(c) => c,
            Placement::Pending(_) => panic!("orbit point of a partial filling"),
        };
        pt[e - 1] = params.alpha(c.row + 1).clone();
        pt[n + e - 1] = params.beta(c.col + 1).clone();
    }
    pt
}

/// A cell of a straightened filling: its entry and where it sat originally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub entry: usize,
    pub origin: Cell,
}

/// A standard filling after zero or more straightening steps.
///
/// Rows are stored bottom-up in their current positions; every slot keeps the
/// cell it occupied in the original filling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    kind: ShapeKind,
    rows: Vec<Vec<Slot>>,
}

impl Tableau {
    pub fn from_filling(s: &Filling) -> Self {
        assert!(s.is_standard(), "straightening needs a standard filling");
        let lens = s.shape().row_lengths();
        let mut rows: Vec<Vec<Slot>> = lens.iter().map(|&l| Vec::with_capacity(l)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            for c in 0..lens[r] {
                let cell = Cell::new(r, c);
                let entry = s.entry_at(cell).expect("standard filling");
                row.push(Slot { entry, origin: cell });
            }
        }
        Tableau { kind: s.shape().kind(), rows }
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> &[Vec<Slot>] {
        &self.rows
    }

    /// Current (row, col) of `entry`.
    pub fn find(&self, entry: usize) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|s| s.entry == entry).map(|c| (r, c))
        })
    }

    /// Original 1-indexed label of current row `r`.
    pub fn row_label(&self, r: usize) -> RowLabel {
        RowLabel::from_index(self.rows[r][0].origin.row)
    }

    /// Current shape after straightening.
    pub fn current_shape(&self) -> Shape {
        let lens: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        match self.kind {
            ShapeKind::TwoColumn => Shape::TwoColumn {
                a: lens.len(),
                b: lens.iter().filter(|&&l| l == 2).count(),
            },
            ShapeKind::Hook => Shape::Hook { n: self.size(), m: lens.len().saturating_sub(1) },
        }
    }

    pub fn row_views(&self) -> Vec<RowView> {
        self.rows
            .iter()
            .map(|r| RowView { len: r.len(), occupants: r.iter().map(|s| s.entry).collect() })
            .collect()
    }

    /// Preference with respect to `k` on the current rows (zero-indexed, most preferred first).
    pub fn preference(&self, k: usize) -> Vec<usize> {
        row_preference(&self.row_views(), self.kind, k)
    }

    /// Removes the largest entry and straightens.
    ///
    /// Two-column: an orphaned partner becomes a length-1 row just above the
    /// length-2 rows. Hook: bottom-row cells are pushed left, emptied rows
    /// slide down.
    pub fn remove_and_straighten(&self) -> Tableau {
        let n = self.size();
        let (r, c) = self.find(n).expect("largest entry present");
        let mut rows = self.rows.clone();
        match self.kind {
            ShapeKind::TwoColumn => {
                if rows[r].len() == 2 {
                    let rest = rows[r][1 - c];
                    rows.remove(r);
                    let long = rows.iter().filter(|row| row.len() == 2).count();
                    rows.insert(long, vec![rest]);
                } else {
                    rows.remove(r);
                }
            }
            ShapeKind::Hook => {
                if r == 0 {
                    rows[0].remove(c);
                    if rows[0].is_empty() {
                        rows.remove(0);
                    }
                } else {
                    rows.remove(r);
                }
            }
        }
        Tableau { kind: self.kind, rows }
    }

    /// Orbit point read from original labels.
    pub fn orbit_point(&self, params: &Parameters) -> Vec<Rational> {
        let n = self.size();
        let mut pt = vec![Rational::zero(); 2 * n];
        for slot in self.rows.iter().flatten() {
            pt[slot.entry - 1] = params.alpha(slot.origin.row + 1).clone();
            pt[n + slot.entry - 1] = params.beta(slot.origin.col + 1).clone();
        }
        pt
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|s| s.entry.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Successive straightenings of `s`, from `s` itself down to the single cell.
pub fn straightening_chain(s: &Filling) -> Vec<Tableau> {
    let mut t = Tableau::from_filling(s);
    let mut out = vec![t.clone()];
    while t.size() > 1 {
        t = t.remove_and_straighten();
        out.push(t.clone());
    }
    out
}

/// All standard fillings, in lexicographic order of the entry sequence read
/// cell by cell. Use [`enumerate_standard_fillings`] for the kicking order.
pub fn all_standard_fillings(shape: &Shape) -> Vec<Filling> {
    let cells = shape.cells();
    let n = cells.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let mut by_entry = vec![Cell::new(0, 0); n];
        for (i, &e) in perm.iter().enumerate() {
            by_entry[e - 1] = cells[i];
        }
        out.push(Filling::standard(*shape, &by_entry).expect("valid permutation"));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Standard fillings ordered by the kicking order of the shape.
pub fn enumerate_standard_fillings(shape: &Shape) -> Vec<Filling> {
    let mut all = all_standard_fillings(shape);
    crate::kicking::sort_in_kicking_order(shape, &mut all);
    all
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Random distinct rational used by property tests.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=9).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn straighten_example() -> Filling {
        Filling::parse("2,4/6,1/5,3").unwrap()
    }

    #[test]
    fn shapes_and_statistics() {
        let s: Shape = "2^3,1^2".parse().unwrap();
        assert_eq!(s, Shape::TwoColumn { a: 5, b: 3 });
        assert_eq!(s.to_string(), "2,2,2,1,1");
        assert_eq!(s.n_mu(), 10 + 3);
        assert_eq!(s.n_mu_conjugate(), 3);
        let h: Shape = "4,1,1".parse().unwrap();
        assert_eq!(h, Shape::Hook { n: 6, m: 2 });
        assert_eq!((h.n_mu(), h.n_mu_conjugate()), (3, 6));
        assert!("3,2".parse::<Shape>().is_err());
        assert!("1,2".parse::<Shape>().is_err());
        assert_eq!(Shape::Hook { n: 1, m: 0 }.cells(), vec![Cell::new(0, 0)]);
    }

    #[test]
    fn dominance_left_figure() {
        let s = Filling::empty(Shape::TwoColumn { a: 5, b: 3 });
        let order: Vec<usize> = s.row_preference(8).iter().map(|r| r.0).collect();
        assert_eq!(order, vec![3, 2, 1, 5, 4]);
    }

    #[test]
    fn dominance_right_figure() {
        let s = Filling::empty(Shape::TwoColumn { a: 5, b: 3 })
            .with(8, Placement::Pending(0))
            .unwrap()
            .with(7, Placement::Cell(Cell::new(3, 0)))
            .unwrap()
            .with(6, Placement::Pending(2))
            .unwrap();
        let order: Vec<usize> = s.row_preference(5).iter().map(|r| r.0).collect();
        assert_eq!(order, vec![2, 5, 1, 3]);
    }

    #[test]
    fn single_row_prefers_itself() {
        let s = Filling::parse("1,2,3").unwrap();
        assert_eq!(s.row_preference(3), vec![RowLabel(1)]);
    }

    #[test]
    fn straightening_chain_matches_figure() {
        let chain: Vec<String> = straightening_chain(&straighten_example()).iter().map(|t| t.to_string()).collect();
        assert_eq!(chain, vec!["2,4/6,1/5,3", "2,4/5,3/1", "2,4/3/1", "2/3/1", "2/1", "1"]);
        let two = Filling::parse("1/2").unwrap();
        assert_eq!(Tableau::from_filling(&two).remove_and_straighten().to_string(), "1");
    }

    #[test]
    fn hook_straightening_pushes_left_then_down() {
        let s = Filling::parse("5,3,6,2/4/1").unwrap();
        let chain: Vec<String> = straightening_chain(&s).iter().map(|t| t.to_string()).collect();
        assert_eq!(chain, vec!["5,3,6,2/4/1", "5,3,2/4/1", "3,2/4/1", "3,2/1", "2/1", "1"]);
        let t = Filling::parse_on(Shape::Hook { n: 2, m: 1 }, "2/1").unwrap();
        assert_eq!(Tableau::from_filling(&t).remove_and_straighten().rows()[0][0].origin, Cell::new(1, 0));
    }

    #[test]
    fn orbit_points() {
        let p = Parameters::default_for(&Shape::TwoColumn { a: 3, b: 3 });
        let pt = straighten_example().orbit_point(&p);
        let want: Vec<Rational> = [2, 1, 3, 1, 3, 2, 2, 1, 2, 2, 1, 1].iter().map(|&v| rat(v)).collect();
        assert_eq!(pt, want);
        let chain = straightening_chain(&straighten_example());
        let want: Vec<Rational> = [2, 1, 3, 1, 2, 1, 2, 2].iter().map(|&v| rat(v)).collect();
        assert_eq!(chain[2].orbit_point(&p), want);
        let one = Filling::parse("1").unwrap();
        assert_eq!(one.orbit_point(&p), vec![rat(1), rat(1)]);
    }

    #[test]
    fn serialization_round_trip() {
        let s = straighten_example();
        assert_eq!(s.to_string(), "2,4/6,1/5,3");
        let partial = Filling::empty(Shape::TwoColumn { a: 2, b: 1 }).with(3, Placement::Pending(0)).unwrap();
        assert_eq!(partial.to_string(), "3?,./.");
        assert_eq!(Filling::parse_on(partial.shape(), "3?,./.").unwrap(), partial);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_standard_fillings(&Shape::TwoColumn { a: 1, b: 0 }).len(), 1);
        let f = all_standard_fillings(&Shape::TwoColumn { a: 2, b: 2 });
        assert_eq!(f.len(), 24);
        assert_eq!(f.iter().collect::<BTreeSet<_>>().len(), 24);
    }

    #[test]
    fn random_parameters_are_distinct_and_seeded() {
        let s = Shape::Hook { n: 6, m: 2 };
        let a = Parameters::random(&s, 7);
        assert_eq!(a, Parameters::random(&s, 7));
        assert_ne!(a, Parameters::random(&s, 8));
        assert!(Parameters::new(a.alphas().to_vec(), a.betas().to_vec()).is_ok());
        assert!(Parameters::new(vec![rat(1), rat(1)], vec![rat(1)]).is_err());
    }
}
