//! Von Neumann entropy and entropy exchange, in bits, with `0 log 0 = 0`.

use serde::Serialize;

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::matcore::{
    clip_spectrum, hermitian_eigenvalues, ComplexMatrix, DensityMatrix, CLIP_TOL,
};

/// Non-negative reals, usually a spectrum. Entries in `[-1e-10, 0)` are
/// clipped to zero on construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub const SUM_TOL: f64 = 1e-9;

    pub fn new(values: Vec<f64>) -> Result<Self> {
        values
            .into_iter()
            .map(|x| {
                if x.is_nan() || x < -CLIP_TOL {
                    Err(Error::NegativeProbability(x))
                } else {
                    Ok(x.max(0.0))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Like [`ProbabilityVector::new`] but also requires the entries to sum to 1.
    pub fn normalized(values: Vec<f64>) -> Result<Self> {
        let p = Self::new(values)?;
        let sum = p.sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::NotNormalized(sum));
        }
        Ok(p)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// `-sum p log2 p`.
pub fn shannon_entropy_bits(p: &ProbabilityVector) -> f64 {
    let h: f64 = p
        .values()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    h.max(0.0)
}

/// Shannon entropy of raw values, which must pass [`ProbabilityVector::new`].
pub fn entropy_of(values: &[f64]) -> Result<f64> {
    Ok(shannon_entropy_bits(&ProbabilityVector::new(
        values.to_vec(),
    )?))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon_entropy_bits(&ProbabilityVector::new(
        rho.spectrum()?,
    )?))
}

/// `W_ij = Tr(A_i rho A_j^dagger)` over the channel's ordered Kraus list.
/// This is the environment state left behind by the channel when the
/// environment starts pure.
pub fn exchange_matrix(ch: &KrausChannel, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != ch.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: ch.input_dim(),
            actual: rho.dim(),
        });
    }
    let images: Vec<ComplexMatrix> = ch
        .operators()
        .iter()
        .map(|a| a.matmul(rho.matrix()))
        .collect();
    let ops = ch.operators();
    // Tr(X B^dagger) = sum_kl X_kl conj(B_kl)
    let w = ComplexMatrix::from_fn(ops.len(), |i, j| {
        images[i]
            .entries()
            .iter()
            .zip(ops[j].entries())
            .map(|(x, b)| x * b.conj())
            .sum()
    });
    Ok(w.hermitian_part())
}

/// Entropy exchange in bits together with the (clipped, ascending) spectrum of
/// the exchange matrix.
pub fn entropy_exchange(
    ch: &KrausChannel,
    rho: &DensityMatrix,
) -> Result<(f64, ProbabilityVector)> {
    let w = exchange_matrix(ch, rho)?;
    let spectrum = ProbabilityVector::new(clip_spectrum(&hermitian_eigenvalues(&w)?)?)?;
    Ok((shannon_entropy_bits(&spectrum), spectrum))
}

/// `S(rho) + S(N(rho)) - S_e(rho)`, the quantum mutual information between a
/// reference purifying `rho` and the channel output.
pub fn quantum_mutual_information(ch: &KrausChannel, rho: &DensityMatrix) -> Result<f64> {
    let output = ch.apply(rho)?;
    let (exchange, _) = entropy_exchange(ch, rho)?;
    Ok(von_neumann_entropy(rho)? + von_neumann_entropy(&output)? - exchange)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{memory_channel, ChannelParams};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy_bits(&pv(&[1.0, 0.0, 0.0, 0.0])), 0.0);
        assert!((shannon_entropy_bits(&pv(&[0.25; 4])) - 2.0).abs() < 1e-15);
        assert!((shannon_entropy_bits(&pv(&[0.5, 0.25, 0.125, 0.125])) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn negative_probability_rejected() {
        assert!(matches!(
            ProbabilityVector::new(vec![1.0, -1e-6]),
            Err(Error::NegativeProbability(_))
        ));
        assert_eq!(pv(&[1.0, -1e-12]).values(), &[1.0, 0.0]);
        assert!(matches!(
            ProbabilityVector::normalized(vec![0.5, 0.4]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn von_neumann_examples() {
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DensityMatrix::pure(&[s.into(), s.into()]).unwrap();
        assert!(von_neumann_entropy(&plus).unwrap().abs() < 1e-12);
    }

    #[test]
    fn identity_channel_leaves_environment_pure() {
        let rho = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        let (s, spectrum) = entropy_exchange(&KrausChannel::identity(2), &rho).unwrap();
        assert_eq!(s, 0.0);
        assert_eq!(spectrum.values(), &[1.0]);
    }

    #[test]
    fn full_damping_without_memory() {
        let ch = memory_channel(ChannelParams::new(FRAC_PI_2, 0.0).unwrap()).unwrap();
        let (s, spectrum) = entropy_exchange(&ch, &DensityMatrix::maximally_mixed(4)).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
        let sorted = spectrum.sorted();
        assert!(sorted[..2].iter().all(|x| x.abs() < 1e-12));
        assert!(sorted[2..].iter().all(|x| (x - 0.25).abs() < 1e-12));
    }

    #[test]
    fn exchange_matrix_has_unit_trace() {
        let ch = memory_channel(ChannelParams::new(FRAC_PI_3, 0.5).unwrap()).unwrap();
        let rho = DensityMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let w = exchange_matrix(&ch, &rho).unwrap();
        assert_eq!(w.dim(), 6);
        assert!((w.trace().re - 1.0).abs() < 1e-12);
        assert!(w.trace().im.abs() < 1e-12);
    }

    #[test]
    fn exchange_spectrum_with_partial_memory() {
        // Five nonzero eigenvalues, from an independent numpy diagonalization.
        let ch = memory_channel(ChannelParams::new(FRAC_PI_3, 0.5).unwrap()).unwrap();
        let (_, spectrum) = entropy_exchange(&ch, &DensityMatrix::maximally_mixed(4)).unwrap();
        let expected = [0.0, 0.0149836, 0.1171875, 0.1171875, 0.1640625, 0.5865789];
        for (a, b) in spectrum.sorted().iter().zip(expected) {
            assert!((a - b).abs() < 1e-7, "{spectrum:?}");
        }
    }
}
