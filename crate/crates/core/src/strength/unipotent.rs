use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::strength::certificate::{Combine, StrengthCertificate, Term};
use crate::strength::deg2::{strength_deg2, tensor_element, Mode};

/// Strength of `[[1, x], [0, 1]]` in `K^2 ⊗ K^2` over an algebraically closed field.
#[derive(Clone, Debug)]
pub struct Unipotent {
    pub x: Scalar,
    pub strength: usize,
    /// Explicit decomposition when one exists over the field of `x`.
    pub certificate: Option<StrengthCertificate>,
    /// `μ` with `μ² − xμ + 1 = 0` when it lies in the field of `x`.
    pub mu: Option<Scalar>,
    pub a: Option<Scalar>,
    pub b: Option<Scalar>,
    /// Coefficients `[1, −x, 1]` of `μ² − xμ + 1`, whose roots give the strength-1
    /// decomposition over the closure.
    pub quadratic: [Scalar; 3],
}

pub fn unipotent_matrix(x: &Scalar) -> Matrix {
    let f = x.field();
    Matrix::from_rows(f, vec![vec![f.one(), x.clone()], vec![f.zero(), f.one()]]).expect("2x2")
}

pub fn strength_unipotent(x: &Scalar) -> Result<Unipotent> {
    let f = x.field();
    if f != Field::Rationals {
        return Err(Error::Unsupported("the unipotent family is defined over Q".into()));
    }
    let a_mat = unipotent_matrix(x);
    let quadratic = [f.one(), -x, f.one()];
    let four = f.from_i64(4);
    let disc = &(x * x) - &four;
    if disc.is_zero() {
        let full = strength_deg2(&a_mat, Mode::Full)?;
        return Ok(Unipotent {
            x: x.clone(),
            strength: 2,
            certificate: Some(full.certificate),
            mu: None,
            a: None,
            b: None,
            quadratic,
        });
    }
    let mut out = Unipotent {
        x: x.clone(),
        strength: 1,
        certificate: None,
        mu: None,
        a: None,
        b: None,
        quadratic,
    };
    if let Some(root) = disc.sqrt() {
        let half = f.from_i64(2).inv().expect("char 0");
        let mu = &(x + &root) * &half;
        let mu2 = &mu * &mu;
        let a = mu2.div(&(&mu2 - &f.one()));
        let b = &f.one() - &a;
        let lambda = mu.inv().expect("μ ≠ 0");
        let u = vec![f.one(), lambda];
        let v = vec![f.one(), mu.clone()];
        out.certificate = Some(StrengthCertificate {
            target: tensor_element(&a_mat)?,
            terms: vec![Term {
                combine: Combine::Bilinear {
                    a: a.clone(),
                    b: b.clone(),
                },
                g: u,
                h: v,
                radical: None,
            }],
        });
        out.mu = Some(mu);
        out.a = Some(a);
        out.b = Some(b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn family_values() {
        for x in ["2", "-2"] {
            let u = strength_unipotent(&q(x)).unwrap();
            assert_eq!(u.strength, 2);
            assert!(u.certificate.unwrap().verify().unwrap());
        }
        for x in ["0", "1", "5/2", "-3"] {
            assert_eq!(strength_unipotent(&q(x)).unwrap().strength, 1);
        }
    }

    #[test]
    fn five_halves_certificate() {
        let u = strength_unipotent(&q("5/2")).unwrap();
        assert_eq!(u.mu, Some(q("2")));
        assert_eq!(u.a, Some(q("4/3")));
        assert_eq!(u.b, Some(q("-1/3")));
        let cert = u.certificate.unwrap();
        assert_eq!(cert.claimed(), 1);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn irrational_root_gives_quadratic() {
        let u = strength_unipotent(&q("0")).unwrap();
        assert!(u.certificate.is_none());
        assert_eq!(u.quadratic, [q("1"), q("0"), q("1")]);
    }
}
