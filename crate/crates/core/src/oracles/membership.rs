use super::spec::{add_digitwise, sub_digitwise, NoiseModel, OracleSpec};
use crate::error::{invalid, Error, Result};
use crate::qudit::QuditState;
use crate::scalar::Real;

fn check_register<T: Real>(state: &QuditState<T>, spec: &OracleSpec) -> Result<()> {
    if spec.noise() != NoiseModel::None {
        return Err(invalid("membership oracles are noiseless"));
    }
    if state.q() != spec.q() {
        return Err(Error::DimensionMismatch { expected: spec.q(), actual: state.q() });
    }
    if state.num_digits() < spec.register_digits() {
        return Err(Error::DimensionMismatch { expected: spec.register_digits(), actual: state.num_digits() });
    }
    Ok(())
}

fn apply<T: Real>(state: &mut QuditState<T>, spec: &OracleSpec, inverse: bool) -> Result<()> {
    check_register(state, spec)?;
    let (q, k) = (spec.q(), spec.out_digits());
    let inputs = spec.domain_size();
    let outputs = spec.range_size();
    let block = inputs * outputs;
    state.apply_permutation(|i| {
        let (x, y, rest) = (i % inputs, (i / inputs) % outputs, i / block);
        let fx = spec.eval(x);
        let y2 = if inverse { sub_digitwise(y, fx, q, k) } else { add_digitwise(y, fx, q, k) };
        x + inputs * y2 + block * rest
    })
}

/// `O_f: |x⟩|y⟩ → |x⟩|y + f(x)⟩`, digitwise mod `q`.
///
/// The input occupies digits `0..n`, the output the next `k` digits; any higher
/// digits are untouched.
pub fn membership_apply<T: Real>(state: &mut QuditState<T>, spec: &OracleSpec) -> Result<()> {
    apply(state, spec, false)
}

/// `O_f^{-1}: |x⟩|y⟩ → |x⟩|y − f(x)⟩`.
pub fn membership_apply_inverse<T: Real>(state: &mut QuditState<T>, spec: &OracleSpec) -> Result<()> {
    apply(state, spec, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn zero_function_is_identity() {
        let mut rng = trial_rng(0, 0);
        let f = OracleSpec::constant(2, 3, 0).unwrap();
        let orig = QuditState::<f64>::random(3, 3, &mut rng).unwrap();
        let mut s = orig.clone();
        membership_apply(&mut s, &f).unwrap();
        assert_eq!(s, orig);
    }

    #[test]
    fn parity_oracle_writes_inner_product() {
        // s = (1, 0); input |x0=1, x1=0⟩|0⟩ -> output 1.
        let f = OracleSpec::inner_product(2, &[1, 0]).unwrap();
        let mut s = QuditState::<f64>::basis(2, &[1, 0, 0]).unwrap();
        membership_apply(&mut s, &f).unwrap();
        assert_eq!(s, QuditState::basis(2, &[1, 0, 1]).unwrap());
    }

    #[test]
    fn qubit_oracle_is_an_involution() {
        let mut rng = trial_rng(1, 0);
        let f = OracleSpec::inner_product(2, &[1, 1, 0]).unwrap();
        let orig = QuditState::<f64>::random(2, 4, &mut rng).unwrap();
        let mut s = orig.clone();
        membership_apply(&mut s, &f).unwrap();
        membership_apply(&mut s, &f).unwrap();
        assert!(s.max_abs_diff(&orig).unwrap() < 1e-15);
    }

    #[test]
    fn inverse_restores_qudit_state() {
        let mut rng = trial_rng(2, 0);
        let f = OracleSpec::inner_product(5, &[2, 3]).unwrap();
        let orig = QuditState::<f64>::random(5, 3, &mut rng).unwrap();
        let mut s = orig.clone();
        membership_apply(&mut s, &f).unwrap();
        assert!(s.max_abs_diff(&orig).unwrap() > 1e-3);
        membership_apply_inverse(&mut s, &f).unwrap();
        assert!(s.max_abs_diff(&orig).unwrap() < 1e-15);
    }

    #[test]
    fn induced_matrix_is_a_permutation() {
        let f = OracleSpec::inner_product(3, &[1, 2]).unwrap();
        let dim = 27;
        let mut column_hits = vec![0usize; dim];
        for i in 0..dim {
            let mut s = QuditState::<f64>::basis_index(3, 3, i).unwrap();
            membership_apply(&mut s, &f).unwrap();
            let support: Vec<usize> = s.exact_distribution().iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(j, _)| j).collect();
            assert_eq!(support.len(), 1);
            column_hits[support[0]] += 1;
        }
        assert!(column_hits.iter().all(|&c| c == 1));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let f = OracleSpec::inner_product(2, &[1, 0, 1]).unwrap();
        let mut s = QuditState::<f64>::zero(2, 3).unwrap();
        assert!(membership_apply(&mut s, &f).is_err());
        let g = OracleSpec::inner_product(3, &[1]).unwrap();
        assert!(membership_apply(&mut s, &g).is_err());
    }
}
