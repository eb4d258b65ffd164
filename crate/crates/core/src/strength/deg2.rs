use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::schur::{Element, Kind, Label};
use crate::strength::certificate::{spec_of, Combine, Radical, StrengthCertificate, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `A` symmetric, viewed as the quadric `xᵀAx`.
    Sym,
    /// `A` alternating, viewed in `Λ^2`.
    Alt,
    /// Arbitrary `A ∈ V⊗V = S^2 ⊕ Λ^2`.
    Full,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Mode::Sym),
            "alt" => Ok(Mode::Alt),
            "full" => Ok(Mode::Full),
            _ => Err(Error::Parse(format!("unknown strength mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Deg2Strength {
    pub lower: usize,
    pub upper: usize,
    /// A decomposition with `upper` terms.
    pub certificate: StrengthCertificate,
}

impl Deg2Strength {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// `xᵀAx ∈ S^2(K^n)`.
pub fn quadric_element(a: &Matrix) -> Result<Element> {
    let n = a.rows();
    let mut e = Element::zero(spec_of(Kind::Sym(2)), a.field(), n);
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j).is_zero() {
                e.add_term(0, Label::Sym(vec![i, j]), a.get(i, j).clone())?;
            }
        }
    }
    Ok(e)
}

/// Symmetric Gram matrix of a quadric (inverse of [`quadric_element`]); needs char ≠ 2.
pub fn quadric_matrix(e: &Element) -> Result<Matrix> {
    if e.spec().components() != [Kind::Sym(2)] {
        return Err(Error::Unsupported(format!("quadric_matrix of {}", e.spec())));
    }
    let field = e.field();
    let half = field
        .from_i64(2)
        .inv()
        .ok_or_else(|| Error::Unsupported("characteristic 2".into()))?;
    let mut a = Matrix::zeros(field, e.n(), e.n());
    for ((_, label), v) in e.terms() {
        let (i, j) = (label.indices()[0], label.indices()[1]);
        if i == j {
            a.set(i, i, v.clone());
        } else {
            let h = v * &half;
            a.set(i, j, h.clone());
            a.set(j, i, h);
        }
    }
    Ok(a)
}

/// `Σ_{i<j} A_ij e_i∧e_j ∈ Λ^2(K^n)` for alternating `A`.
pub fn wedge_element(a: &Matrix) -> Result<Element> {
    let n = a.rows();
    let mut e = Element::zero(spec_of(Kind::Ext(2)), a.field(), n);
    for i in 0..n {
        for j in i + 1..n {
            if !a.get(i, j).is_zero() {
                e.add_term(0, Label::Ext(vec![i, j]), a.get(i, j).clone())?;
            }
        }
    }
    Ok(e)
}

/// `Σ A_ij e_i⊗e_j ∈ T^2(K^n)`.
pub fn tensor_element(a: &Matrix) -> Result<Element> {
    let n = a.rows();
    let mut e = Element::zero(spec_of(Kind::Tensor(2)), a.field(), n);
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j).is_zero() {
                e.add_term(0, Label::Word(vec![i, j]), a.get(i, j).clone())?;
            }
        }
    }
    Ok(e)
}

pub fn strength_deg2(a: &Matrix, mode: Mode) -> Result<Deg2Strength> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let field = a.field();
    match mode {
        Mode::Sym => {
            if !a.is_symmetric() {
                return Err(Error::Invalid("mode sym needs a symmetric matrix".into()));
            }
            let terms = symmetric_terms(a, Combine::Product)?;
            let k = terms.len();
            Ok(Deg2Strength {
                lower: k,
                upper: k,
                certificate: StrengthCertificate {
                    target: quadric_element(a)?,
                    terms,
                },
            })
        }
        Mode::Alt => {
            if !a.is_alternating() {
                return Err(Error::Invalid("mode alt needs an alternating matrix".into()));
            }
            let terms = alternating_terms(a);
            let k = terms.len();
            Ok(Deg2Strength {
                lower: k,
                upper: k,
                certificate: StrengthCertificate {
                    target: wedge_element(a)?,
                    terms,
                },
            })
        }
        Mode::Full => {
            let at = a.transpose();
            let rk = a.rank();
            let rs = a.add(&at)?.rank();
            let ra = a.sub(&at)?.rank();
            let lower = rk.div_ceil(2).max(rs.div_ceil(2)).max(ra / 2);
            let split = rs.div_ceil(2) + ra / 2;
            let upper = if field.characteristic() == 2 { rk } else { rk.min(split) };
            let terms = if rk <= split || field.characteristic() == 2 {
                rank_terms(a)
            } else {
                let half = field.from_i64(2).inv().expect("char != 2");
                let sym = a.add(&at)?.scale(&half);
                let alt = a.sub(&at)?.scale(&half);
                let mut terms = symmetric_terms(&sym, Combine::Bilinear { a: half.clone(), b: half })?;
                terms.extend(alternating_terms(&alt));
                terms
            };
            debug_assert_eq!(terms.len(), upper);
            Ok(Deg2Strength {
                lower,
                upper,
                certificate: StrengthCertificate {
                    target: tensor_element(a)?,
                    terms,
                },
            })
        }
    }
}

/// `A = Σ_k col_k ⊗ row_k` from the reduced echelon form.
fn rank_terms(a: &Matrix) -> Vec<Term> {
    let ech = a.echelon();
    ech.pivots
        .iter()
        .enumerate()
        .map(|(r, &c)| Term {
            combine: Combine::tensor(a.field()),
            g: a.column(c),
            h: ech.matrix.row(r).to_vec(),
            radical: None,
        })
        .collect()
}

/// Congruence reduction of a symmetric matrix into `⌈rk/2⌉` products of linear
/// forms (over a quadratic extension where two squares must be paired).
fn symmetric_terms(a: &Matrix, combine: Combine) -> Result<Vec<Term>> {
    let field = a.field();
    if field.characteristic() == 2 {
        return Err(Error::Unsupported("symmetric strength in characteristic 2".into()));
    }
    let n = a.rows();
    let mut b = a.clone();
    let mut squares: Vec<(Scalar, Vec<Scalar>)> = Vec::new();
    let mut terms = Vec::new();
    loop {
        if let Some(i) = (0..n).find(|&i| !b.get(i, i).is_zero()) {
            let c = b.get(i, i).inv().expect("nonzero");
            let l = b.column(i);
            b = b.sub(&Matrix::outer(field, &l, &l).scale(&c))?;
            squares.push((c, l));
            continue;
        }
        let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !b.get(i, j).is_zero())
        else {
            break;
        };
        let inv = b.get(i, j).inv().expect("nonzero");
        let u = b.column(i);
        let v = b.column(j);
        let uv = Matrix::outer(field, &u, &v);
        b = b.sub(&uv.add(&uv.transpose())?.scale(&inv))?;
        let two = field.from_i64(2);
        terms.push(Term {
            combine: combine.clone(),
            g: u.iter().map(|x| x * &inv * &two).collect(),
            h: v,
            radical: None,
        });
    }
    let mut it = squares.into_iter();
    while let Some((c1, l1)) = it.next() {
        match it.next() {
            None => terms.push(Term {
                combine: combine.clone(),
                g: l1.iter().map(|x| x * &c1).collect(),
                h: l1,
                radical: None,
            }),
            Some((c2, l2)) => {
                // c1 l1² + c2 l2² = c1 (l1 + s l2)(l1 − s l2) with s² = −c2/c1
                let delta = -(&c2 * &c1.inv().expect("nonzero"));
                match delta.sqrt() {
                    Some(s) => terms.push(Term {
                        combine: combine.clone(),
                        g: l1.iter().zip(&l2).map(|(x, y)| &c1 * &(x + &(&s * y))).collect(),
                        h: l1.iter().zip(&l2).map(|(x, y)| x - &(&s * y)).collect(),
                        radical: None,
                    }),
                    None => terms.push(Term {
                        combine: combine.clone(),
                        g: l1.iter().map(|x| x * &c1).collect(),
                        h: l1.clone(),
                        radical: Some(Radical {
                            radicand: delta,
                            g: l2.iter().map(|y| y * &c1).collect(),
                            h: l2.iter().map(|y| -y).collect(),
                        }),
                    }),
                }
            }
        }
    }
    Ok(terms)
}

/// `A = Σ u_k∧v_k` with `rk(A)/2` terms.
fn alternating_terms(a: &Matrix) -> Vec<Term> {
    let field = a.field();
    let n = a.rows();
    let mut b = a.clone();
    let mut terms = Vec::new();
    while let Some((i, j)) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !b.get(i, j).is_zero())
    {
        let inv = b.get(i, j).inv().expect("nonzero");
        let u: Vec<Scalar> = b.column(i).iter().map(|x| x * &inv).collect();
        let v = b.column(j);
        let uv = Matrix::outer(field, &u, &v);
        b = b.sub(&uv.sub(&uv.transpose()).expect("square")).expect("square");
        terms.push(Term {
            combine: Combine::Wedge,
            g: u,
            h: v,
            radical: None,
        });
    }
    terms
}

/// The `n × n` matrix whose upper-left `2k × 2k` block is `k` nilpotent Jordan blocks.
pub fn jordan_blocks(field: Field, k: usize, n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for b in 0..k {
        m.set(2 * b, 2 * b + 1, field.one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rank_three_symmetric() {
        let a = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let s = strength_deg2(&a, Mode::Sym).unwrap();
        assert_eq!(s.exact(), Some(2));
        assert!(s.certificate.verify().unwrap());
        // x² + y² is not a product over Q
        assert!(!s.certificate.is_rational());
    }

    #[test]
    fn split_quadric_is_rational() {
        let a = Matrix::from_i64(Q, &[&[1, 0], &[0, -1]]);
        let s = strength_deg2(&a, Mode::Sym).unwrap();
        assert_eq!(s.exact(), Some(1));
        assert!(s.certificate.is_rational());
        assert!(s.certificate.verify().unwrap());
    }

    #[test]
    fn zero_matrix_all_modes() {
        let z = Matrix::zeros(Q, 3, 3);
        for mode in [Mode::Sym, Mode::Alt, Mode::Full] {
            let s = strength_deg2(&z, mode).unwrap();
            assert_eq!(s.exact(), Some(0));
            assert!(s.certificate.verify().unwrap());
        }
    }

    #[test]
    fn alternating() {
        let a = Matrix::from_i64(Q, &[&[0, 2, 1, 0], &[-2, 0, 0, 3], &[-1, 0, 0, 1], &[0, -3, -1, 0]]);
        let s = strength_deg2(&a, Mode::Alt).unwrap();
        assert_eq!(s.exact(), Some(a.rank() / 2));
        assert!(s.certificate.verify().unwrap());
    }

    #[test]
    fn jordan_blocks_are_tight() {
        for k in 1..4 {
            let a = jordan_blocks(Q, k, 2 * k);
            let s = strength_deg2(&a, Mode::Full).unwrap();
            assert_eq!((s.lower, s.upper), (k, k));
            assert!(s.certificate.verify().unwrap());
        }
    }

    #[test]
    fn full_mode_split_certificate() {
        // identity: rank 4 but only 2 symmetric terms
        let a = Matrix::identity(Q, 4);
        let s = strength_deg2(&a, Mode::Full).unwrap();
        assert_eq!((s.lower, s.upper), (2, 2));
        assert!(s.certificate.verify().unwrap());
    }

    #[test]
    fn mode_mismatch() {
        let a = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        assert!(strength_deg2(&a, Mode::Sym).is_err());
        assert!(strength_deg2(&a, Mode::Alt).is_err());
        assert!(strength_deg2(&Matrix::zeros(Q, 2, 3), Mode::Full).is_err());
    }

    #[test]
    fn prime_field_symmetric() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::from_i64(f, &[&[1, 2, 0], &[2, 3, 1], &[0, 1, 4]]);
        let s = strength_deg2(&a, Mode::Sym).unwrap();
        assert_eq!(s.exact(), Some(a.rank().div_ceil(2)));
        assert!(s.certificate.verify().unwrap());
    }
}
