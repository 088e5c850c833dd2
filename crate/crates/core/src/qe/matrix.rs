use std::fmt;

/// Status of a structure's first-order theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    /// Finitely or recursively axiomatizable with a decidable theory.
    Yes,
    /// Not recursively axiomatizable.
    No,
    /// Not applicable (the structure lacks the order, or exp is undefined).
    NotApplicable,
    /// Open: ⟨ℝ; exp⟩ is axiomatizable iff the weak Schanuel conjecture holds.
    Open,
}

impl Cell {
    pub fn symbol(self) -> &'static str {
        match self {
            Cell::Yes => "✓",
            Cell::No => "×",
            Cell::NotApplicable => "–",
            Cell::Open => "?",
        }
    }
}

/// Axiomatizability of the standard number structures by signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub columns: [&'static str; 5],
    pub rows: Vec<(&'static str, [Cell; 5])>,
}

pub fn matrix() -> Matrix {
    use Cell::{No as N, NotApplicable as D, Open as Q, Yes as Y};
    Matrix {
        columns: ["ℕ", "ℤ", "ℚ", "ℝ", "ℂ"],
        rows: vec![
            ("{<}", [Y, Y, Y, Y, D]),
            ("{+}", [Y, Y, Y, Y, Y]),
            ("{<,+}", [Y, Y, Y, Y, D]),
            ("{+,×}", [N, N, N, Y, Y]),
            ("{×}", [Y, Y, Y, Y, Y]),
            ("{<,×}", [N, N, Y, Y, D]),
            ("exp", [N, D, D, Q, N]),
        ],
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8}", "")?;
        for c in self.columns {
            write!(f, " {c:^3}")?;
        }
        writeln!(f)?;
        for (label, cells) in &self.rows {
            write!(f, "{label:<8}")?;
            for c in cells {
                write!(f, " {:^3}", c.symbol())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
