//! The `chars`, `eis` and `gamma` subcommands.

use mirabolic::characters::{enumerate_characters, DirichletCharacter};
use mirabolic::eisenstein::{coefficient_grid, pole_data, Cell, EisParams};
use mirabolic::gamma_factors::{
    embedding_params, parse_isobaric, validate_generic_unitary, GammaKind, GammaProduct, IsobaricSum,
};
use mirabolic::{Error, Result, C64};
use serde_json::{json, Value};

use crate::output::{cx, error_json, Outcome, Status};

pub struct CharsQuery {
    pub modulus: u64,
    pub list: bool,
    pub index: Option<usize>,
    pub gauss: bool,
    pub fft: Option<i64>,
    pub conductor: bool,
}

fn character_json(index: usize, chi: &DirichletCharacter) -> Value {
    let rec = chi.to_record();
    json!({
        "index": index,
        "order": chi.order(),
        "parity": chi.parity(),
        "conductor": chi.conductor(),
        "primitive": chi.is_primitive(),
        "exponents": rec.exponents.iter().map(|(a, e)| format!("{a}:{e}")).collect::<Vec<_>>().join(" "),
    })
}

pub fn chars(q: &CharsQuery) -> Result<Outcome> {
    let all = enumerate_characters(q.modulus);
    if q.list {
        let items: Vec<Value> = all.iter().enumerate().map(|(i, c)| character_json(i, c)).collect();
        return Ok(Outcome::ok(json!({ "modulus": q.modulus, "count": items.len(), "characters": items }))
            .rows("/characters"));
    }
    let index = q.index.ok_or_else(|| Error::InvalidArgument("one of --list or --index is required".into()))?;
    let chi = all.get(index).ok_or_else(|| {
        Error::InvalidArgument(format!("index {index} out of range: there are {} characters mod {}", all.len(), q.modulus))
    })?;
    let mut out = json!({ "character": character_json(index, chi) });
    if q.gauss {
        out["gauss_sum"] = cx(chi.gauss_sum());
    }
    if let Some(m) = q.fft {
        out["fft"] = json!({ "m": m, "value": cx(chi.finite_fourier(m)) });
    }
    if q.conductor {
        out["conductor"] = json!(chi.conductor());
    }
    Ok(Outcome::ok(out))
}

pub struct EisQuery {
    pub n: usize,
    pub nu: C64,
    pub modulus: u64,
    pub char_index: usize,
    pub cell: Cell,
    pub r: Option<Vec<i64>>,
    pub r_box: Option<u32>,
    pub pole: bool,
}

fn box_points(dim: usize, b: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::with_capacity(dim)];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

pub fn eis(q: &EisQuery) -> Result<Outcome> {
    let psi = enumerate_characters(q.modulus).into_iter().nth(q.char_index).ok_or_else(|| {
        Error::InvalidArgument(format!("character index {} out of range mod {}", q.char_index, q.modulus))
    })?;
    let params = EisParams::new(q.n, q.nu, psi)?;
    let cell = match q.cell {
        Cell::Big => "big",
        Cell::Wlong => "wlong",
    };
    let mut out = json!({ "cell": cell, "epsilon": params.epsilon() });
    let mut status = Status::Ok;
    let mut rows = None;
    if q.pole {
        let p = pole_data(&params);
        out["pole"] = json!({ "nu": q.n as f64 / 2.0, "is_polar": p.is_polar, "residue_c0": cx(p.residue_c0) });
    }
    if let Some(r) = &q.r {
        let value = coefficient_grid(&params, q.cell, std::slice::from_ref(r)).pop().expect("one point");
        out["r"] = json!(r);
        out["value"] = cx(value?);
    }
    if let Some(b) = q.r_box {
        let pts = box_points(q.n - 1, b as i64);
        let values = coefficient_grid(&params, q.cell, &pts);
        let items: Vec<Value> = pts
            .iter()
            .zip(values)
            .map(|(r, v)| match v {
                Ok(z) => json!({ "r": r, "value": cx(z) }),
                Err(e) => {
                    status = Status::Domain;
                    json!({ "r": r, "error": error_json(&e) })
                }
            })
            .collect();
        out["count"] = json!(items.len());
        out["rows"] = Value::Array(items);
        if !q.pole {
            rows = Some("/rows");
        }
    }
    let mut o = Outcome::ok(out);
    o.rows = rows;
    o.status = status;
    Ok(o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Functor {
    Std,
    Ext2,
    Sym2,
    Tensor,
}

pub struct GammaQuery {
    pub rep: String,
    pub functor: Functor,
    pub other: Option<String>,
    pub twist_parity: Option<u32>,
    pub eval: Option<C64>,
    pub embedding: bool,
    pub alternative: bool,
    pub validate: bool,
}

const UNITARY_TOL: f64 = 1e-12;

fn factors_json(g: &GammaProduct<C64>) -> Value {
    g.factors
        .iter()
        .map(|f| {
            let kind = match f.kind {
                GammaKind::R => "R",
                GammaKind::C => "C",
            };
            json!({ "kind": kind, "shift": cx(f.shift) })
        })
        .collect()
}

pub fn gamma(q: &GammaQuery) -> Result<Outcome> {
    let pi = parse_isobaric(&q.rep)?;
    let image: IsobaricSum<C64> = match q.functor {
        Functor::Std => pi.clone(),
        Functor::Ext2 => pi.ext2(),
        Functor::Sym2 => pi.sym2(),
        Functor::Tensor => {
            let other = q
                .other
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--functor tensor needs --other".into()))?;
            pi.tensor(&parse_isobaric(other)?)
        }
    };
    let image = match q.twist_parity {
        Some(eta) => image.sgn_twist(eta),
        None => image,
    };
    let factors = image.l_factors();
    let mut out = json!({
        "representation": pi.to_string(),
        "image": image.to_string(),
        "dimension": image.dimension(),
        "degree": factors.degree(),
        "factors": factors_json(&factors),
        "canonical": factors_json(&factors.canonicalize()),
    });
    if let Some(s) = q.eval {
        out["eval"] = json!({ "s": cx(s), "value": cx(factors.evaluate(s)?) });
    }
    if q.embedding {
        let ps = embedding_params(&pi, q.alternative)?;
        out["embedding"] = json!({
            "lambda": ps.lambda().iter().map(|&z| cx(z)).collect::<Vec<_>>(),
            "delta": ps.delta(),
        });
    }
    if q.validate {
        let v = validate_generic_unitary(&pi, UNITARY_TOL);
        out["valid"] = json!(v.is_empty());
        out["violations"] = serde_json::to_value(&v).expect("violations serialize");
    }
    Ok(Outcome::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_size() {
        assert_eq!(box_points(2, 2).len(), 25);
        assert_eq!(box_points(3, 1).len(), 27);
        assert_eq!(box_points(1, 0), vec![vec![0]]);
    }
}
