use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraElement, StructureAlgebra, Subalgebra, Subspace};
use crate::error::{Error, Result};
use crate::qpoly::{factor_rational, modinv_in_quotient};
use crate::ratlin::{self, rat, QVector};

const RANDOM_SPLIT_ATTEMPTS: usize = 64;

/// Jacobson radical, computed as the kernel of the trace form.
pub fn radical(a: &StructureAlgebra) -> Subspace {
    let k = ratlin::kernel_basis(&a.trace_form());
    Subspace::from_spanning(a.dim(), &k.columns())
}

/// Primitive central idempotents of a semisimple algebra, summing to `1`.
pub fn central_idempotents(a: &StructureAlgebra) -> Result<Vec<AlgebraElement>> {
    let rad = radical(a);
    if rad.dim() > 0 {
        return Err(Error::NotSemisimple {
            radical_dim: rad.dim(),
        });
    }
    let z = a.center()?;
    Ok(split_commutative(z.induced())?
        .iter()
        .map(|e| z.to_parent(e))
        .collect())
}

enum Split {
    Field,
    Pieces(Vec<QVector>),
}

/// Primitive idempotents of a commutative semisimple algebra.
pub fn split_commutative(b: &StructureAlgebra) -> Result<Vec<QVector>> {
    if b.dim() <= 1 {
        return Ok(vec![b.unit().clone()]);
    }
    match find_split(b)? {
        Split::Field => Ok(vec![b.unit().clone()]),
        Split::Pieces(es) => {
            let mut out = Vec::new();
            for e in es {
                let image = b.left_regular(&e)?;
                let sub = Subalgebra::from_spanning(b, &ratlin::column_space(&image).columns(), Some(e))?;
                for f in split_commutative(sub.induced())? {
                    out.push(sub.to_parent(&f));
                }
            }
            Ok(out)
        }
    }
}

fn find_split(b: &StructureAlgebra) -> Result<Split> {
    for i in 0..b.dim() {
        if let Some(s) = try_split(b, &b.basis_element(i))? {
            return Ok(s);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ b.dim() as u64);
    for _ in 0..RANDOM_SPLIT_ATTEMPTS {
        let x: QVector = (0..b.dim()).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if let Some(s) = try_split(b, &x)? {
            return Ok(s);
        }
    }
    Err(Error::SplittingFailed {
        attempts: RANDOM_SPLIT_ATTEMPTS,
    })
}

/// A reducible minimal polynomial gives CRT idempotents; an irreducible one
/// of full degree shows `b` is a field.
fn try_split(b: &StructureAlgebra, x: &[crate::ratlin::Rat]) -> Result<Option<Split>> {
    let mu = b.minpoly_element(x)?;
    let fac = factor_rational(&mu)?;
    if fac.factors.len() == 1 {
        return Ok((mu.degree() == Some(b.dim())).then_some(Split::Field));
    }
    if fac.factors.iter().any(|(_, m)| *m > 1) {
        // a nilpotent would live in the radical
        return Err(Error::NotSemisimple { radical_dim: 1 });
    }
    let mut es = Vec::with_capacity(fac.factors.len());
    for (p, _) in &fac.factors {
        let r = mu.div_exact(p).expect("factor divides");
        let s = modinv_in_quotient(&r, p)?.expect("coprime cofactors");
        let poly = (&r * &s).rem(&mu);
        es.push(b.eval_poly(&poly, x));
    }
    Ok(Some(Split::Pieces(es)))
}

/// Simple two-sided ideals `e·A`, one per primitive central idempotent, each
/// carrying `e` as its identity.
pub fn simple_factors(a: &StructureAlgebra) -> Result<Vec<Subalgebra>> {
    central_idempotents(a)?
        .into_iter()
        .map(|e| {
            let image = ratlin::column_space(&a.left_regular(&e)?).columns();
            Subalgebra::from_spanning(a, &image, Some(e))
        })
        .collect()
}

/// A commutative subalgebra and whether it has been checked to be a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFieldTag {
    pub field: Subalgebra,
    pub certified: bool,
}

/// Certifies that a commutative subalgebra is a field: semisimple with a
/// single primitive idempotent.
pub fn field_certify(k: &Subalgebra) -> Result<BaseFieldTag> {
    let b = k.induced();
    if !b.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let certified = match central_idempotents(b) {
        Ok(es) => es.len() == 1,
        Err(Error::NotSemisimple { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(BaseFieldTag {
        field: k.clone(),
        certified,
    })
}

/// True when the commutative algebra `b` is a field.
pub fn is_field(b: &StructureAlgebra) -> Result<bool> {
    Ok(field_certify(&Subalgebra::whole(b))?.certified)
}
