//! The kicking basis: recursive `phi` for two-column shapes and hooks, the
//! two-column kicking tree, and the total kicking order on fillings.

use std::cmp::Ordering;

use thiserror::Error;

use crate::combinat::{
    row_preference, Cell, Filling, Parameters, Placement, RowView, Shape, ShapeKind, Tableau,
};
use crate::linfactor::{CancellationError, FactorProduct, LinearFactor};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KickingError {
    #[error("filling {0} is not standard")]
    NotStandard(String),
    #[error("expected a {expected:?} shape, got {shape}")]
    WrongShape { expected: ShapeKind, shape: Shape },
    #[error(transparent)]
    Cancellation(#[from] CancellationError),
}

/// How the brace is read when `n` opens a row of a rectangle `(2^b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RectangleBrace {
    /// Same quotient as every other two-column shape.
    #[default]
    Quotient,
    /// Bare `(y_k - beta_1)` while every current row has length 2.
    Literal,
}

fn xf(var: usize, row_label: usize, params: &Parameters) -> LinearFactor {
    LinearFactor::x(var, row_label, params.alpha(row_label).clone())
}

fn yf(var: usize, col_label: usize, params: &Parameters) -> LinearFactor {
    LinearFactor::y(var, col_label, params.beta(col_label).clone())
}

fn position(order: &[usize], row: usize) -> usize {
    order.iter().position(|&r| r == row).expect("row is eligible")
}

fn check(s: &Filling, expected: ShapeKind) -> Result<(), KickingError> {
    if !s.is_standard() {
        return Err(KickingError::NotStandard(s.to_string()));
    }
    if s.shape().kind() != expected {
        return Err(KickingError::WrongShape { expected, shape: s.shape() });
    }
    Ok(())
}

/// `phi_S` for a standard filling of a two-column shape.
pub fn phi_two_column(s: &Filling, params: &Parameters) -> Result<FactorProduct, KickingError> {
    phi_two_column_with(s, params, RectangleBrace::default())
}

pub fn phi_two_column_with(
    s: &Filling,
    params: &Parameters,
    brace: RectangleBrace,
) -> Result<FactorProduct, KickingError> {
    check(s, ShapeKind::TwoColumn)?;
    let mut num = FactorProduct::one();
    let mut den = FactorProduct::one();
    let mut t = Tableau::from_filling(s);
    while t.size() > 1 {
        let n = t.size();
        let (ri, ci) = t.find(n).expect("largest entry");
        let pref = t.preference(n);
        for &j in &pref[..position(&pref, ri)] {
            num.push(xf(n, t.row_label(j).0, params));
        }
        let row = &t.rows()[ri];
        if row.len() == 2 && ci == 0 {
            let k = row[1].entry;
            num.push(yf(k, 1, params));
            let rectangle = t.rows().iter().all(|r| r.len() == 2);
            if brace == RectangleBrace::Quotient || !rectangle {
                let pk = t.preference(k);
                let p = position(&pk, ri);
                for &j in &pk[p + 1..] {
                    num.push(xf(k, t.row_label(j).0, params));
                }
                for &j in &pk[..p] {
                    den.push(xf(k, t.row_label(j).0, params));
                }
            }
        }
        t = t.remove_and_straighten();
    }
    Ok(num.divide_exact(&den)?)
}

/// `phi_S` for a standard filling of a hook.
///
/// Column labels in the bottom row are the original column of `n` plus one;
/// the second denominator applies when `n` started in the first column.
pub fn phi_hook(s: &Filling, params: &Parameters) -> Result<FactorProduct, KickingError> {
    check(s, ShapeKind::Hook)?;
    let single_row = s.shape().is_single_row();
    let mut num = FactorProduct::one();
    let mut den = FactorProduct::one();
    let mut t = Tableau::from_filling(s);
    while t.size() > 1 {
        let n = t.size();
        let (ri, ci) = t.find(n).expect("largest entry");
        let pref = t.preference(n);
        for &j in &pref[..position(&pref, ri)] {
            num.push(xf(n, t.row_label(j).0, params));
        }
        if ri == 0 {
            let bottom = &t.rows()[0];
            let col = bottom[ci].origin.col + 1;
            for slot in &bottom[ci + 1..] {
                num.push(yf(slot.entry, col, params));
            }
            if !single_row && ci == 0 && bottom.len() >= 2 {
                let big_k = bottom[1].entry;
                let pk = t.preference(big_k);
                for &j in &pk[..position(&pk, 0)] {
                    den.push(xf(big_k, t.row_label(j).0, params));
                }
                if bottom[0].origin.col == 0 {
                    for i in 1..t.rows().len() {
                        let j = t.rows()[i][0].entry;
                        let pj = t.preference(j);
                        if let Some(p0) = pj.iter().position(|&r| r == 0) {
                            if p0 < position(&pj, i) {
                                den.push(xf(j, t.row_label(0).0, params));
                            }
                        }
                    }
                }
            }
        }
        t = t.remove_and_straighten();
    }
    Ok(num.divide_exact(&den)?)
}

/// `phi_S` using the rules of the filling's shape kind.
pub fn phi(s: &Filling, params: &Parameters) -> Result<FactorProduct, KickingError> {
    match s.shape().kind() {
        ShapeKind::TwoColumn => phi_two_column(s, params),
        ShapeKind::Hook => phi_hook(s, params),
    }
}

/// A node of the two-column kicking tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KickingTreeNode {
    pub partial: Filling,
    pub edge_label: FactorProduct,
    pub children: Vec<KickingTreeNode>,
}

impl KickingTreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(KickingTreeNode::leaf_count).sum()
        }
    }

    /// Leaves left to right with the product of edge labels from the root.
    pub fn leaves(&self) -> Vec<(Filling, FactorProduct)> {
        let mut out = Vec::new();
        self.collect_leaves(&FactorProduct::one(), &mut out);
        out
    }

    fn collect_leaves(&self, above: &FactorProduct, out: &mut Vec<(Filling, FactorProduct)>) {
        let here = above.mul(&self.edge_label);
        if self.is_leaf() {
            out.push((self.partial.clone(), here));
        } else {
            for c in &self.children {
                c.collect_leaves(&here, out);
            }
        }
    }

    /// Indented text rendering, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&self.partial.to_string());
        if !self.edge_label.is_one() {
            out.push_str("  ");
            out.push_str(&self.edge_label.to_string());
        }
        out.push('\n');
        for c in &self.children {
            c.render_into(depth + 1, out);
        }
    }
}

/// Kicking tree of a two-column shape, entries placed from `n` down to 1.
pub fn build_kicking_tree(shape: &Shape, params: &Parameters) -> Result<KickingTreeNode, KickingError> {
    build_kicking_tree_with(shape, params, RectangleBrace::default())
}

pub fn build_kicking_tree_with(
    shape: &Shape,
    params: &Parameters,
    brace: RectangleBrace,
) -> Result<KickingTreeNode, KickingError> {
    if shape.kind() != ShapeKind::TwoColumn {
        return Err(KickingError::WrongShape { expected: ShapeKind::TwoColumn, shape: *shape });
    }
    let mut root = KickingTreeNode {
        partial: Filling::empty(*shape),
        edge_label: FactorProduct::one(),
        children: Vec::new(),
    };
    grow(&mut root, shape.size(), params, brace);
    Ok(root)
}

fn grow(node: &mut KickingTreeNode, k: usize, params: &Parameters, brace: RectangleBrace) {
    if k == 0 {
        return;
    }
    let partial = &node.partial;
    let views = partial.row_views_above(k);
    let pref = row_preference(&views, ShapeKind::TwoColumn, k);
    let mut children = Vec::with_capacity(pref.len());
    for (i, &r) in pref.iter().enumerate() {
        let lead = FactorProduct::from_factors(pref[..i].iter().map(|&j| xf(k, j + 1, params)));
        let partner = views[r].occupants.first().copied();
        let child = match (views[r].len, partner) {
            (1, _) => {
                let mut c = leafless(partial.with(k, Placement::Cell(Cell::new(r, 0))).expect("free row"), lead);
                grow(&mut c, k - 1, params, brace);
                c
            }
            (_, None) => {
                let mut c = leafless(partial.with(k, Placement::Pending(r)).expect("free row"), lead);
                grow(&mut c, k - 1, params, brace);
                c
            }
            (_, Some(m)) => {
                let pending = partial.with(k, Placement::Pending(r)).expect("free slot");
                let left = pending.fix_column(k, 0).and_then(|f| f.fix_column(m, 1)).expect("columns");
                let right = pending.fix_column(k, 1).and_then(|f| f.fix_column(m, 0)).expect("columns");
                let mut right_label = FactorProduct::from_factors([yf(k, 1, params)]);
                let closed = views.iter().filter(|v| v.len == 2 && v.occupants.iter().all(|&e| e <= m)).count();
                let rectangle_case = brace == RectangleBrace::Literal
                    && 2 * closed == m
                    && views.iter().all(|v| v.len == 2);
                let (parent_label, left_label) = if rectangle_case {
                    (lead, FactorProduct::one())
                } else {
                    for &j in &pref[i + 1..] {
                        right_label.push(xf(k, j + 1, params));
                    }
                    (FactorProduct::one(), lead)
                };
                let mut l = leafless(left, left_label);
                let mut rt = leafless(right, right_label);
                grow(&mut l, k - 1, params, brace);
                grow(&mut rt, k - 1, params, brace);
                KickingTreeNode { partial: pending, edge_label: parent_label, children: vec![l, rt] }
            }
        };
        children.push(child);
    }
    node.children = children;
}

fn leafless(partial: Filling, edge_label: FactorProduct) -> KickingTreeNode {
    KickingTreeNode { partial, edge_label, children: Vec::new() }
}

/// Which total order labels rows and columns of the evaluation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillingOrder {
    /// Left-to-right leaf order of the kicking tree; for hooks the order by largest differing entry.
    #[default]
    Kicking,
    /// Two-column only: at each completed row, left placements by decreasing partner, then
    /// right placements by increasing partner.
    Block,
}

/// Per-level sort key for two-column fillings.
fn two_column_key(s: &Filling, order: FillingOrder) -> Vec<(u8, isize)> {
    let shape = s.shape();
    let n = shape.size();
    let mut views: Vec<RowView> =
        shape.row_lengths().iter().map(|&len| RowView { len, occupants: Vec::new() }).collect();
    let mut key = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let row = s.row_of(k).expect("standard filling");
        let pref = row_preference(&views, ShapeKind::TwoColumn, k);
        let rank = position(&pref, row) as isize;
        let completing = !views[row].occupants.is_empty();
        let col = s.cell_of(k).map(|c| c.col).unwrap_or(0) as isize;
        key.push(match (order, completing) {
            (FillingOrder::Kicking, _) => (0, 2 * rank + if completing { col } else { 0 }),
            (FillingOrder::Block, false) => (0, rank),
            (FillingOrder::Block, true) if col == 0 => (1, rank),
            (FillingOrder::Block, true) => (2, -rank),
        });
        views[row].occupants.push(k);
    }
    key
}

struct HookView {
    row_of: Vec<usize>,
    bottom: Vec<usize>,
    width: usize,
    arm: usize,
}

impl HookView {
    fn new(s: &Filling) -> Self {
        let n = s.shape().size();
        let mut row_of = vec![0; n + 1];
        for e in 1..=n {
            row_of[e] = s.row_of(e).expect("standard filling");
        }
        HookView { row_of, bottom: s.bottom_word(), width: s.shape().width(), arm: s.shape().num_rows() - 1 }
    }

    /// Rank of `row(l)` in the preference list of entries `> l`.
    fn rank(&self, l: usize) -> usize {
        let n = self.row_of.len() - 1;
        let big = l + 1..=n;
        let free_bottom = self.width - big.clone().filter(|&x| self.row_of[x] == 0).count();
        let occupied: Vec<usize> = big.map(|x| self.row_of[x]).collect();
        let mut order = Vec::new();
        if free_bottom >= 2 {
            order.push(0);
        }
        for r in (1..=self.arm).rev() {
            if !occupied.contains(&r) {
                order.push(r);
            }
        }
        if free_bottom == 1 {
            order.push(0);
        }
        position(&order, self.row_of[l])
    }
}

fn hook_cmp(a: &HookView, b: &HookView) -> Ordering {
    let n = a.row_of.len() - 1;
    let l = (1..=n).rev().find(|&e| a.row_of[e] != b.row_of[e]).unwrap_or(0);
    if l == 0 {
        return a.bottom.cmp(&b.bottom);
    }
    let below = |v: &HookView| v.bottom.iter().any(|&e| e < l);
    if below(a) || below(b) {
        return a.rank(l).cmp(&b.rank(l));
    }
    a.bottom.cmp(&b.bottom).then_with(|| a.rank(l).cmp(&b.rank(l)))
}

/// Kicking order comparator on standard fillings of `shape`.
pub fn kicking_order(shape: &Shape) -> impl Fn(&Filling, &Filling) -> Ordering {
    let kind = shape.kind();
    move |s, t| match kind {
        ShapeKind::TwoColumn => two_column_key(s, FillingOrder::Kicking).cmp(&two_column_key(t, FillingOrder::Kicking)),
        ShapeKind::Hook => hook_cmp(&HookView::new(s), &HookView::new(t)),
    }
}

/// Sorts fillings of `shape` by the kicking order.
pub fn sort_in_kicking_order(shape: &Shape, fillings: &mut Vec<Filling>) {
    sort_in_order(shape, FillingOrder::Kicking, fillings);
}

/// Sorts by the requested order; `Block` falls back to the kicking order on hooks.
pub fn sort_in_order(shape: &Shape, order: FillingOrder, fillings: &mut Vec<Filling>) {
    match shape.kind() {
        ShapeKind::TwoColumn => fillings.sort_by_cached_key(|s| two_column_key(s, order)),
        ShapeKind::Hook => {
            let mut tagged: Vec<(HookView, Filling)> =
                fillings.drain(..).map(|s| (HookView::new(&s), s)).collect();
            tagged.sort_by(|a, b| hook_cmp(&a.0, &b.0));
            fillings.extend(tagged.into_iter().map(|(_, s)| s));
        }
    }
}

/// `(filling, phi)` pairs in kicking order.
pub fn kicking_basis(shape: &Shape, params: &Parameters) -> Result<Vec<(Filling, FactorProduct)>, KickingError> {
    crate::combinat::enumerate_standard_fillings(shape)
        .into_iter()
        .map(|s| phi(&s, params).map(|p| (s, p)))
        .collect()
}
