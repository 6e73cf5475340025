//! Restriction along `D_n ⊃ D_{n-1}`, `D_{n+1} ⊃ B_n` and `B_n ⊃ D_n`.

use serde::{Deserialize, Serialize};

use super::character::DominantCharacter;
use super::datum::{Family, RootDatum, Weight};
use super::decomp::{decompose_weights, Decomposition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchRule {
    /// `D_n → D_{n-1}`
    DToD,
    /// `D_{n+1} → B_n`
    DToB,
    /// `B_n → D_n`
    BToD,
}

impl BranchRule {
    pub fn target(self, source: &RootDatum) -> Result<RootDatum> {
        let n = source.rank();
        let (family, rank, ok) = match self {
            BranchRule::DToD => (
                Family::D,
                n.saturating_sub(1),
                source.family() == Family::D && n >= 3,
            ),
            BranchRule::DToB => (
                Family::B,
                n.saturating_sub(1),
                source.family() == Family::D && n >= 2,
            ),
            BranchRule::BToD => (Family::D, n, source.family() == Family::B && n >= 2),
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "{self:?} does not apply to {}",
                source.name()
            )));
        }
        RootDatum::new(family, rank)
    }

    fn project(self, w: &Weight) -> Weight {
        match self {
            BranchRule::DToD | BranchRule::DToB => Weight(w.0[..w.0.len() - 1].to_vec()),
            BranchRule::BToD => w.clone(),
        }
    }
}

/// Weight-level restriction of a character.
pub fn branch(c: &DominantCharacter, rule: BranchRule) -> Result<DominantCharacter> {
    let target = rule.target(c.datum())?;
    let mut out = DominantCharacter::zero(&target);
    for (dom, m) in c.mults() {
        let mut part = Vec::new();
        for w in c.datum().orbit(dom) {
            let p = rule.project(&w);
            if target.is_dominant(&p) {
                part.push((p, *m));
            }
        }
        out = out.add(&DominantCharacter::from_weights(&target, part))?;
    }
    Ok(out)
}

/// Restriction of a decomposition, returned decomposed.
pub fn branch_decomposition(d: &Decomposition, rule: BranchRule) -> Result<Decomposition> {
    let target = rule.target(d.datum())?;
    let mut weights = Vec::new();
    for (lambda, m) in d.components() {
        for (w, k) in d.datum().orbit_weights(lambda)? {
            weights.push((rule.project(&w), k * m));
        }
    }
    Ok(decompose_weights(&target, &weights))
}

fn partition(len: usize, twos: usize, ones: usize) -> Weight {
    Weight(
        (0..len)
            .map(|k| {
                if k < twos {
                    4
                } else if k < twos + ones {
                    2
                } else {
                    0
                }
            })
            .collect(),
    )
}

/// Restriction of `V_{θ_i+θ_j}` by the two-column partition rule. `n` is the
/// rank of the target group.
pub fn branch_partition_rule(
    n: usize,
    i: usize,
    j: usize,
    rule: BranchRule,
) -> Result<Vec<Weight>> {
    let source_len = match rule {
        BranchRule::DToB => n + 1,
        BranchRule::BToD => n,
        BranchRule::DToD => {
            return Err(Error::InvalidArgument(
                "partition rule covers D→B and B→D only".into(),
            ))
        }
    };
    if i > j || j > source_len {
        return Err(Error::InvalidArgument(format!(
            "θ{i}+θ{j} is not a two-column weight of rank {source_len}"
        )));
    }
    let (i, j) = (i as i64, j as i64);
    let mut out = Vec::new();
    for (twos, ones) in [
        (i, j - i),
        (i - 1, j - i + 1),
        (i, j - i - 1),
        (i - 1, j - i),
    ] {
        if twos < 0 || ones < 0 || (twos + ones) as usize > n {
            continue;
        }
        let w = partition(n, twos as usize, ones as usize);
        if rule == BranchRule::BToD && (twos + ones) as usize == n && n > 0 {
            let mut mirror = w.clone();
            mirror.0[n - 1] = -mirror.0[n - 1];
            out.push(mirror);
        }
        out.push(w);
    }
    out.sort();
    Ok(out)
}

impl RootDatum {
    /// Full weight multiset of `V_λ`.
    pub fn orbit_weights(&self, lambda: &Weight) -> Result<Vec<(Weight, i64)>> {
        Ok(super::character::freudenthal_char(self, lambda)?.expand())
    }
}
