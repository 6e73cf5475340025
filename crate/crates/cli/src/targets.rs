//! Decomposition targets for `spinsec decompose`.

use num_bigint::BigInt;
use spinsec::secant::s3_halfspin;
use spinsec::weyl::{
    power_decomposition, tensor, Decomposition, Family, PowerKind, RootDatum, Weight,
};
use spinsec::Error;

use crate::registry::DecomposeTarget;

pub fn all() -> Vec<Box<dyn DecomposeTarget>> {
    vec![
        Box::new(Power {
            name: "sym2",
            k: 2,
            kind: PowerKind::Sym,
        }),
        Box::new(Power {
            name: "sym3",
            k: 3,
            kind: PowerKind::Sym,
        }),
        Box::new(Power {
            name: "sym4",
            k: 4,
            kind: PowerKind::Sym,
        }),
        Box::new(Power {
            name: "ext2",
            k: 2,
            kind: PowerKind::Ext,
        }),
        Box::new(Tensor),
        Box::new(Sym3HalfSpin),
    ]
}

/// `C(d + k - 1, k)` for symmetric and `C(d, k)` for exterior powers.
fn power_dim(d: &BigInt, k: usize, kind: PowerKind) -> BigInt {
    let mut num = BigInt::from(1);
    for i in 0..k {
        num *= match kind {
            PowerKind::Sym => d + i,
            PowerKind::Ext => d - i,
        };
    }
    num / (1..=k).product::<usize>()
}

struct Power {
    name: &'static str,
    k: usize,
    kind: PowerKind,
}

impl DecomposeTarget for Power {
    fn name(&self) -> &'static str {
        self.name
    }

    fn summary(&self) -> &'static str {
        match (self.k, self.kind) {
            (2, PowerKind::Sym) => "S²V_λ",
            (3, _) => "S³V_λ",
            (4, _) => "S⁴V_λ",
            _ => "∧²V_λ",
        }
    }

    fn arity(&self) -> usize {
        1
    }

    fn run(&self, datum: &RootDatum, weights: &[Weight]) -> spinsec::Result<Decomposition> {
        power_decomposition(datum, &weights[0], self.k, self.kind)
    }

    fn expected_dim(
        &self,
        datum: &RootDatum,
        weights: &[Weight],
    ) -> spinsec::Result<Option<BigInt>> {
        Ok(Some(power_dim(
            &datum.dim_irrep(&weights[0])?,
            self.k,
            self.kind,
        )))
    }
}

struct Tensor;

impl DecomposeTarget for Tensor {
    fn name(&self) -> &'static str {
        "tensor"
    }

    fn summary(&self) -> &'static str {
        "V_λ ⊗ V_μ"
    }

    fn arity(&self) -> usize {
        2
    }

    fn run(&self, datum: &RootDatum, weights: &[Weight]) -> spinsec::Result<Decomposition> {
        tensor(datum, &weights[0], &weights[1])
    }

    fn expected_dim(
        &self,
        datum: &RootDatum,
        weights: &[Weight],
    ) -> spinsec::Result<Option<BigInt>> {
        Ok(Some(
            datum.dim_irrep(&weights[0])? * datum.dim_irrep(&weights[1])?,
        ))
    }
}

/// `S³Δ₊` for `Spin(2n)`, the family must be `D`.
struct Sym3HalfSpin;

impl DecomposeTarget for Sym3HalfSpin {
    fn name(&self) -> &'static str {
        "sym3-halfspin"
    }

    fn summary(&self) -> &'static str {
        "S³ of the half-spin module (type D only)"
    }

    fn arity(&self) -> usize {
        0
    }

    fn run(&self, datum: &RootDatum, _: &[Weight]) -> spinsec::Result<Decomposition> {
        if datum.family() != Family::D {
            return Err(Error::InvalidArgument(format!(
                "sym3-halfspin needs family D, got {}",
                datum.family()
            )));
        }
        s3_halfspin(datum.rank())
    }

    fn expected_dim(&self, datum: &RootDatum, _: &[Weight]) -> spinsec::Result<Option<BigInt>> {
        let half = BigInt::from(1) << (datum.rank() - 1);
        Ok(Some(power_dim(&half, 3, PowerKind::Sym)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_dimensions() {
        assert_eq!(
            power_dim(&BigInt::from(4), 2, PowerKind::Sym),
            BigInt::from(10)
        );
        assert_eq!(
            power_dim(&BigInt::from(4), 2, PowerKind::Ext),
            BigInt::from(6)
        );
        assert_eq!(
            power_dim(&BigInt::from(256), 3, PowerKind::Sym),
            BigInt::from(2_829_056)
        );
    }
}
