//! Closed-form spectral data for the Capelli operators on the
//! super-polynomial algebra over `q(n)`: eigenvalue polynomials, eigenvalues,
//! the Nazarov scalar and the Harish-Chandra image of the Nazarov element.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{n_lambda, StrictPartition};
use crate::polyring::{MultiPoly, PolyJson};
use crate::qfunctions::{eval_qstar_at, factorial_schur_q};
use crate::scalar::{self, factorial, pow2, sign, ExactScalar};

/// The normalized eigenvalue polynomial `q*_λ = Q*_λ / Q*_λ(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralRecord {
    pub lambda: StrictPartition,
    pub n: usize,
    pub q_star: MultiPoly,
    pub normalizer: ExactScalar,
}

/// JSON wrapper `{"lambda", "n", "normalizer", "poly"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralJson {
    pub lambda: StrictPartition,
    pub n: usize,
    pub normalizer: String,
    pub poly: PolyJson,
}

impl SpectralRecord {
    pub fn to_json(&self) -> SpectralJson {
        SpectralJson {
            lambda: self.lambda.clone(),
            n: self.n,
            normalizer: scalar::format(&self.normalizer),
            poly: self.q_star.to_json(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("spectral record serializes")
    }
}

/// `Q*_λ(λ)`, computed by evaluating the expansion.
pub fn normalizer(lambda: &StrictPartition, n: usize) -> Result<ExactScalar> {
    let v = eval_qstar_at(lambda, lambda, n)?;
    if v.is_zero() {
        return Err(Error::Singular(format!("Q*_{{{lambda}}}({lambda}) vanishes")));
    }
    Ok(v)
}

pub fn eigenvalue_poly(lambda: &StrictPartition, n: usize) -> Result<SpectralRecord> {
    let qs = factorial_schur_q(lambda, n)?;
    let normalizer = normalizer(lambda, n)?;
    let q_star = qs.scale(&(ExactScalar::from_integer(1.into()) / &normalizer));
    Ok(SpectralRecord { lambda: lambda.clone(), n, q_star, normalizer })
}

/// The predicted eigenvalue `c_λ(μ) = Q*_λ(μ) / Q*_λ(λ)` of `D_λ` on `V_μ`.
pub fn capelli_eigenvalue(lambda: &StrictPartition, mu: &StrictPartition, n: usize) -> Result<ExactScalar> {
    Ok(eval_qstar_at(lambda, mu, n)? / normalizer(lambda, n)?)
}

/// `(−1)^{|λ|} n_λ² / ((|λ|!)² 2^{ℓ(λ)})`.
pub fn nazarov_scalar(lambda: &StrictPartition) -> ExactScalar {
    let k = lambda.weight();
    let nl = n_lambda(lambda);
    let kf = ExactScalar::from_integer(factorial(k));
    sign(k % 2 == 1) * &nl * &nl / (&kf * &kf * pow2(lambda.len()))
}

/// `((−1)^{|λ|} |λ|! / n_λ) · Q*_λ(−x_1, …, −x_n)`.
pub fn hc_image_c(lambda: &StrictPartition, n: usize) -> Result<MultiPoly> {
    let k = lambda.weight();
    let c = sign(k % 2 == 1) * ExactScalar::from_integer(factorial(k)) / n_lambda(lambda);
    Ok(factorial_schur_q(lambda, n)?.negate_variables().scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_strict, h_lambda, HVariant};
    use crate::qfunctions::schur_q;
    use crate::scalar::{binomial, frac, int};

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn eigenvalue_polynomials() {
        assert_eq!(eigenvalue_poly(&sp(&[]), 2).unwrap().q_star, MultiPoly::one(2));
        assert_eq!(eigenvalue_poly(&sp(&[1]), 1).unwrap().q_star, MultiPoly::var(1, 1));
        let r = eigenvalue_poly(&sp(&[2]), 1).unwrap();
        let expected = MultiPoly::from_terms(1, [(vec![2], frac(1, 2)), (vec![1], frac(-1, 2))]).unwrap();
        assert_eq!(r.q_star, expected);
        assert_eq!(r.normalizer, int(4));
        let json = r.to_json_string();
        assert_eq!(json, r#"{"lambda":"2","n":1,"normalizer":"4","poly":{"n":1,"terms":[{"e":[2],"c":"1/2"},{"e":[1],"c":"-1/2"}]}}"#);
    }

    #[test]
    fn eigenvalue_properties() {
        for n in 1..=3 {
            for lambda in enumerate_strict(n, 5) {
                let r = eigenvalue_poly(&lambda, n).unwrap();
                for mu in enumerate_strict(n, lambda.weight()) {
                    let v = r.q_star.evaluate(&mu.as_point(n)).unwrap();
                    assert_eq!(v, if mu == lambda { int(1) } else { int(0) });
                }
            }
        }
        assert_eq!(capelli_eigenvalue(&sp(&[1]), &sp(&[2]), 1).unwrap(), int(2));
        assert_eq!(capelli_eigenvalue(&sp(&[2, 1]), &sp(&[2, 1]), 2).unwrap(), int(1));
    }

    #[test]
    fn binomial_at_one_variable() {
        for k in 0..=8u32 {
            for m in 0..=8u32 {
                let lambda = StrictPartition::new(vec![k]).unwrap();
                let mu = StrictPartition::new(vec![m]).unwrap();
                let expected = ExactScalar::from_integer(binomial(m, k));
                assert_eq!(capelli_eigenvalue(&lambda, &mu, 1).unwrap(), expected);
            }
        }
    }

    #[test]
    fn rescaling_invariance() {
        // The ratio does not care which closed form of H is used to rescale Q*.
        for lambda in enumerate_strict(2, 4) {
            for variant in [HVariant::AsPrinted, HVariant::Doubled] {
                let h = h_lambda(&lambda, variant);
                let scaled = factorial_schur_q(&lambda, 2).unwrap().scale(&h);
                for mu in enumerate_strict(2, 5) {
                    let pt = mu.as_point(2);
                    let ratio = scaled.evaluate(&pt).unwrap() / scaled.evaluate(&lambda.as_point(2)).unwrap();
                    assert_eq!(ratio, capelli_eigenvalue(&lambda, &mu, 2).unwrap());
                }
            }
        }
    }

    #[test]
    fn nazarov_scalars() {
        assert_eq!(nazarov_scalar(&sp(&[1])), frac(-1, 2));
        assert_eq!(nazarov_scalar(&sp(&[2])), frac(1, 8));
        assert_eq!(nazarov_scalar(&sp(&[2, 1])), frac(-1, 144));
        // Consistency with the Capelli normalization: z_λ · η(C_λ)(λ) = 1
        // on the evaluated Q*_λ(λ).
        for lambda in enumerate_strict(3, 6) {
            let k = lambda.weight();
            let c = sign(k % 2 == 1) * ExactScalar::from_integer(factorial(k)) / n_lambda(&lambda);
            let v = nazarov_scalar(&lambda) * c * normalizer(&lambda, 3).unwrap();
            assert_eq!(v, int(1), "λ = {lambda}");
        }
    }

    #[test]
    fn hc_images() {
        assert_eq!(hc_image_c(&sp(&[1]), 1).unwrap(), MultiPoly::var(1, 1).scale(&int(2)));
        assert_eq!(hc_image_c(&sp(&[]), 2).unwrap(), MultiPoly::one(2));
        for n in 1..=3 {
            for lambda in enumerate_strict(n, 5) {
                let k = lambda.weight();
                let top = hc_image_c(&lambda, n).unwrap().homogeneous_part(k);
                let c = ExactScalar::from_integer(factorial(k)) / n_lambda(&lambda);
                assert_eq!(top, schur_q(&lambda, n).unwrap().scale(&c));
            }
        }
    }
}
