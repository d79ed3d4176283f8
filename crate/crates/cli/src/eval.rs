//! Evaluation of parsed expressions in `R_α`.

use klr_core::engine::{Element, Engine, GeneratorSymbol};
use klr_core::lie::{RootVector, Word};
use klr_core::{Int, KlrError, Result};

use crate::parse::Expr;

fn generators(engine: &Engine, alpha: &RootVector, gens: &[GeneratorSymbol]) -> Result<Element> {
    for g in gens {
        g.validate(alpha)?;
    }
    engine.word_product(gens, alpha)
}

pub fn eval(engine: &Engine, alpha: &RootVector, e: &Expr) -> Result<Element> {
    let one = || Element::one(alpha);
    Ok(match e {
        Expr::Int(c) => one()?.scale(c),
        Expr::Idempotent(letters) => generators(engine, alpha, &[GeneratorSymbol::Idempotent(Word::new(letters)?)])?,
        Expr::Dot(r) => generators(engine, alpha, &[GeneratorSymbol::Dot(*r)])?,
        Expr::Crossing(r) => generators(engine, alpha, &[GeneratorSymbol::Crossing(*r)])?,
        Expr::Crossings(rs) => {
            let gens: Vec<GeneratorSymbol> = rs.iter().map(|&r| GeneratorSymbol::Crossing(r)).collect();
            generators(engine, alpha, &gens)?
        }
        Expr::Dots(m) => {
            if m.len() != alpha.height() {
                return Err(KlrError::InvalidArgument(format!(
                    "y^[..] needs {} exponents for alpha {alpha}, got {}",
                    alpha.height(),
                    m.len()
                )));
            }
            let gens: Vec<GeneratorSymbol> =
                m.iter().enumerate().flat_map(|(s, &k)| std::iter::repeat(GeneratorSymbol::Dot(s + 1)).take(k as usize)).collect();
            generators(engine, alpha, &gens)?
        }
        Expr::Tau(x) => engine.tau(&eval(engine, alpha, x)?),
        Expr::Neg(x) => eval(engine, alpha, x)?.scale(&Int::from(-1)),
        Expr::Add(x, y) => eval(engine, alpha, x)?.add(&eval(engine, alpha, y)?)?,
        Expr::Sub(x, y) => eval(engine, alpha, x)?.sub(&eval(engine, alpha, y)?)?,
        Expr::Mul(x, y) => engine.mul(&eval(engine, alpha, x)?, &eval(engine, alpha, y)?)?,
    })
}
