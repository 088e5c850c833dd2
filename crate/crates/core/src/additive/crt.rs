use num_bigint::BigInt;
use num_integer::Integer;

use crate::linear::{and, lit, Domain, LForm, LinExpr, Rel};

/// `⋀ᵢ x ≡ rᵢ (mod nᵢ) ∧ ⋀ⱼ x ≠ sⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    pub items: Vec<(BigInt, LinExpr)>,
    pub exclusions: Vec<LinExpr>,
}

impl CongruenceSystem {
    pub fn new(items: Vec<(BigInt, LinExpr)>) -> CongruenceSystem {
        CongruenceSystem { items, exclusions: Vec::new() }
    }

    pub fn ground(items: &[(i64, i64)], exclusions: &[i64]) -> CongruenceSystem {
        CongruenceSystem {
            items: items.iter().map(|&(n, r)| (n.into(), LinExpr::constant(r))).collect(),
            exclusions: exclusions.iter().map(|&s| LinExpr::constant(s)).collect(),
        }
    }
}

/// Solvability condition of a congruence system: pairwise agreement of the
/// residues modulo the gcd of the moduli. A solvable system has infinitely
/// many solutions, so the exclusions never matter.
pub fn crt_condition(sys: &CongruenceSystem) -> LForm {
    let mut out = Vec::new();
    for (i, (ni, ri)) in sys.items.iter().enumerate() {
        for (nj, rj) in &sys.items[i + 1..] {
            let d = ni.gcd(nj);
            out.push(lit(Rel::Cong(d), ri.sub(rj), Domain::Z));
        }
    }
    and(out)
}
