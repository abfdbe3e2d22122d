//! The crystal `𝒴(0) ≅ B(Λ₀)` on n-regular charge-0 diagrams.
//!
//! The `i`-signature lists every addable `i`-cell as `+` and every removable
//! `i`-cell as `−`, read from the rightmost column to the leftmost. Adjacent
//! `+−` pairs cancel until the string has the shape `−…−+…+`. `ẽ_i` removes the
//! cell of the last surviving `−`, `f̃_i` adds the cell of the first surviving `+`.
//!
//! Addable and removable cells are taken positionally. Both operators keep
//! n-regular diagrams n-regular (checked exhaustively in the tests), so no
//! extra filtering is applied when building signatures.

use std::fmt;

use crate::error::{Error, Result};
use crate::young::{color_of, is_n_regular, ColoredDiagram, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// One signature letter together with the cell it refers to (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignatureEntry {
    pub row: u32,
    pub col: u32,
    pub sign: Sign,
}

/// A signature, ordered from the rightmost column to the leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    entries: Vec<SignatureEntry>,
}

impl Signature {
    pub fn new(entries: Vec<SignatureEntry>) -> Self {
        Self { entries }
    }

    /// Parses a string of `+`/`-` characters; cell positions are synthetic
    /// (columns counting down from the string length, row 1).
    pub fn from_signs(signs: &str) -> Self {
        let len = signs.chars().count() as u32;
        let entries = signs
            .chars()
            .enumerate()
            .map(|(idx, ch)| SignatureEntry {
                row: 1,
                col: len - idx as u32,
                sign: if ch == '+' { Sign::Plus } else { Sign::Minus },
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[SignatureEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cancels adjacent `+−` pairs until none remain.
    pub fn reduce(&self) -> Signature {
        let mut stack: Vec<SignatureEntry> = Vec::with_capacity(self.entries.len());
        for &entry in &self.entries {
            match (stack.last(), entry.sign) {
                (Some(top), Sign::Minus) if top.sign == Sign::Plus => {
                    stack.pop();
                }
                _ => stack.push(entry),
            }
        }
        Signature { entries: stack }
    }

    pub fn count(&self, sign: Sign) -> usize {
        self.entries.iter().filter(|e| e.sign == sign).count()
    }

    /// True when no `+` precedes a `−`.
    pub fn is_reduced_shape(&self) -> bool {
        self.entries
            .iter()
            .skip_while(|e| e.sign == Sign::Minus)
            .all(|e| e.sign == Sign::Plus)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            f.write_str(match e.sign {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// An n-regular diagram of charge 0, the underlying set of `B(Λ₀)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularDiagram {
    rows: Vec<u32>,
    n: u32,
}

impl RegularDiagram {
    pub fn new(shape: &Partition, n: u32) -> Result<Self> {
        crate::check_modulus(n)?;
        if !is_n_regular(shape, n) {
            return Err(Error::NotRegular(shape.to_string()));
        }
        Ok(Self {
            rows: shape.to_parts(),
            n,
        })
    }

    pub fn empty(n: u32) -> Result<Self> {
        Self::new(&Partition::empty(), n)
    }

    pub fn from_colored(d: &ColoredDiagram) -> Result<Self> {
        if d.charge() != 0 {
            return Err(Error::NonzeroCharge(d.charge()));
        }
        Self::new(d.shape(), d.n())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts(&self.rows)
    }

    pub fn colored(&self) -> ColoredDiagram {
        ColoredDiagram::new(self.shape(), 0, self.n).expect("valid by construction")
    }

    fn row_len(&self, row: u32) -> u32 {
        self.rows.get(row as usize - 1).copied().unwrap_or(0)
    }

    fn check_residue(&self, i: u32) {
        assert!(i < self.n, "residue {i} out of range for n = {}", self.n);
    }

    /// The `i`-signature, ordered by column from right to left.
    pub fn i_signature(&self, i: u32) -> Signature {
        self.check_residue(i);
        let mut entries = Vec::new();
        let depth = self.rows.len() as u32;
        for row in 1..=depth + 1 {
            let col = self.row_len(row) + 1;
            let fits = row == 1 || self.row_len(row - 1) >= col;
            if fits && color_of(row, col, 0, self.n) == i {
                entries.push(SignatureEntry {
                    row,
                    col,
                    sign: Sign::Plus,
                });
            }
        }
        for row in 1..=depth {
            let col = self.row_len(row);
            if self.row_len(row + 1) < col && color_of(row, col, 0, self.n) == i {
                entries.push(SignatureEntry {
                    row,
                    col,
                    sign: Sign::Minus,
                });
            }
        }
        // A column holds at most one addable and one removable cell, and the
        // two differ in color, so sorting by column alone is unambiguous.
        entries.sort_by_key(|e| std::cmp::Reverse(e.col));
        Signature { entries }
    }

    pub fn reduced_signature(&self, i: u32) -> Signature {
        self.i_signature(i).reduce()
    }

    pub fn epsilon(&self, i: u32) -> usize {
        self.reduced_signature(i).count(Sign::Minus)
    }

    pub fn phi(&self, i: u32) -> usize {
        self.reduced_signature(i).count(Sign::Plus)
    }

    /// Removes the cell of the last `−` in the reduced `i`-signature.
    pub fn e_tilde(&self, i: u32) -> Option<RegularDiagram> {
        let reduced = self.reduced_signature(i);
        let target = reduced
            .entries
            .iter()
            .rev()
            .find(|e| e.sign == Sign::Minus)?;
        let mut rows = self.rows.clone();
        let idx = target.row as usize - 1;
        rows[idx] -= 1;
        if rows[idx] == 0 {
            rows.pop();
        }
        Some(RegularDiagram { rows, n: self.n })
    }

    /// Adds the cell of the first `+` in the reduced `i`-signature.
    pub fn f_tilde(&self, i: u32) -> Option<RegularDiagram> {
        let reduced = self.reduced_signature(i);
        let target = reduced.entries.iter().find(|e| e.sign == Sign::Plus)?;
        let mut rows = self.rows.clone();
        let idx = target.row as usize - 1;
        if idx == rows.len() {
            rows.push(1);
        } else {
            rows[idx] += 1;
        }
        Some(RegularDiagram { rows, n: self.n })
    }

    /// Whether `∅ ⊗ self` is a maximal element of `B(Λ₀) ⊗ B(Λ₀)`:
    /// `ε_i(self) ≤ δ_{i0}` for every `i`.
    pub fn is_maximal_second_factor(&self) -> bool {
        (0..self.n).all(|i| self.epsilon(i) <= usize::from(i == 0))
    }
}

/// The structural form of maximality: the first removable column from the
/// right is 0-removable, and for each `k` the `k`-th admissible column and the
/// `(k+1)`-st removable column (both counted from the right) share a color.
pub fn column_chain_conditions(p: &Partition, n: u32) -> bool {
    if !is_n_regular(p, n) {
        return false;
    }
    if p.is_empty() {
        return true;
    }
    let pairs = p.pairs();
    let sums = p.partial_sums();
    let first_removable = color_of(sums[0] as u32, pairs[0].0, 0, n);
    if first_removable != 0 {
        return false;
    }
    (0..pairs.len() - 1).all(|k| {
        let above = if k == 0 { 0 } else { sums[k - 1] as u32 };
        let admissible = color_of(above + 1, pairs[k].0 + 1, 0, n);
        let removable = color_of(sums[k + 1] as u32, pairs[k + 1].0, 0, n);
        admissible == removable
    })
}
