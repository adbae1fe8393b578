use crate::combinatorics::{classify_string, shadow_from_inj, CombError, ShadowPartition, StringClass};
use crate::roots::RootVector;

use super::endo::action_matrix;
use super::{ModError, ModuleWindow};

/// Injective roots of M and the resulting shadow partition. Total modules are
/// decided from the action matrices (x_α is nilpotent or injective); windowed
/// ones from the symbolic support, x_α being injective iff α-strings are
/// unbounded above.
pub fn shadow_of_module(m: &ModuleWindow) -> Result<ShadowPartition, ModError> {
    let alg = m.algebra();
    let rs = alg.root_system().ok_or_else(|| ModError::Unsupported(format!("{} has no root system", alg.name())))?;
    let mut inj: Vec<RootVector> = Vec::new();
    for alpha in rs.roots() {
        let g = alg
            .root_generator(&alpha)
            .ok_or_else(|| ModError::Internal(format!("no generator for root {alpha:?}")))?;
        let injective = if m.is_total() {
            let a = action_matrix(m, g);
            if a.rank() == m.dim() {
                true
            } else {
                let mut p = a.clone();
                for _ in 0..m.dim() {
                    p = p.mul(&a);
                }
                if !p.is_zero() {
                    return Err(ModError::Internal(format!("x_α for {alpha:?} is neither nilpotent nor injective")));
                }
                false
            }
        } else {
            let support = m.support().ok_or_else(|| CombError::AmbiguousSupport("no symbolic support".into()))?;
            let w = alg
                .root_to_weight(&alpha)
                .ok_or_else(|| ModError::Internal(format!("root {alpha:?} has no weight")))?;
            matches!(classify_string(support, &w)?, StringClass::I | StringClass::Minus)
        };
        if injective {
            inj.push(alpha);
        }
    }
    Ok(shadow_from_inj(rs, &inj)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperAlgebra;
    use crate::arith::Cyclotomic;
    use crate::modules::{finite_simple_module, rank1_cuspidal};

    #[test]
    fn finite_is_locally_finite() {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        let m = finite_simple_module(&a, &[2, 3].map(Cyclotomic::integer).to_vec()).unwrap();
        let s = shadow_of_module(&m).unwrap();
        assert_eq!(s.f.len(), a.root_system().unwrap().len());
    }

    #[test]
    fn dense_is_injective() {
        for id in ["sl2", "osp12"] {
            let a = SuperAlgebra::by_id(id).unwrap();
            let m = rank1_cuspidal(&a, &Cyclotomic::ratio(1, 3), &Cyclotomic::ratio(1, 7), 6).unwrap();
            let s = shadow_of_module(&m).unwrap();
            assert_eq!(s.i.len(), a.root_system().unwrap().len(), "{id}");
        }
    }
}
