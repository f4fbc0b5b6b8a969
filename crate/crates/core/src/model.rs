//! Model data: a finite group together with the 2-cocycle s and
//! super-3-cocycle ω that define a fermionic twisted quantum double, plus
//! the built-in instances and the JSON input format.

use num::BigRational;
use serde_json::Value;
use thiserror::Error;

use crate::groups::{
    solve_graded_pentagon, Cocycle2, FiniteGroup, GroupError, SuperCocycle3,
};
use crate::scalar::{Exact, Scalar};

/// Extension point for building scalars out of parsed rational pairs.
pub trait FromRationals: Scalar {
    fn from_rationals(re: &BigRational, im: &BigRational) -> Self;
}

impl FromRationals for Exact {
    fn from_rationals(re: &BigRational, im: &BigRational) -> Self {
        Exact::new(re.clone(), im.clone())
    }
}

impl FromRationals for crate::scalar::Approx {
    fn from_rationals(re: &BigRational, im: &BigRational) -> Self {
        let conv = |r: &BigRational| -> f64 {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        crate::scalar::Approx(num::complex::Complex64::new(conv(re), conv(im)))
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unknown builtin model `{0}`")]
    UnknownBuiltin(String),
    #[error("failed to parse model file: {0}")]
    Parse(String),
    #[error("group validation failed: {0}")]
    Group(#[from] GroupError),
    #[error("2-cocycle violation at ({0}, {1}, {2})")]
    Cocycle2(usize, usize, usize),
    #[error("graded pentagon violation at ({0}, {1}, {2}, {3})")]
    Pentagon(usize, usize, usize, usize),
    #[error("omega is not normalized")]
    NotNormalized,
}

/// A validated fermionic twisted quantum double model.
#[derive(Clone, Debug)]
pub struct Model<S: Scalar> {
    pub name: String,
    pub group: FiniteGroup,
    pub s: Cocycle2,
    pub omega: SuperCocycle3<S>,
}

impl<S: Scalar> Model<S> {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Run the full validation stack: cocycle condition, normalization and
    /// graded pentagon.
    pub fn validate(&self, tol: f64) -> Result<(), ModelError> {
        self.s
            .check(&self.group)
            .map_err(|v| ModelError::Cocycle2(v.0, v.1, v.2))?;
        if !self.omega.is_normalized() {
            return Err(ModelError::NotNormalized);
        }
        self.omega
            .check_graded_pentagon(&self.group, &self.s, tol)
            .map_err(|v| ModelError::Pentagon(v.0, v.1, v.2, v.3))?;
        Ok(())
    }
}

/// Orientation of the fermionic toric code cocycle: ω(1,1,1) = ±i.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FtcSign {
    Plus,
    Minus,
}

/// The fermionic toric code: G = Z₂, s(1,1) = 1 and ω(1,1,1) = ±i.
pub fn ftc_model<S: Scalar>(sign: FtcSign) -> Model<S> {
    let group = FiniteGroup::cyclic(2);
    let s = Cocycle2::from_table(&group, &[vec![0, 0], vec![0, 1]]).unwrap();
    let mut omega = vec![S::one(); 8];
    omega[7] = match sign {
        FtcSign::Plus => S::i(),
        FtcSign::Minus => -S::i(),
    };
    Model {
        name: match sign {
            FtcSign::Plus => "ftc+".into(),
            FtcSign::Minus => "ftc-".into(),
        },
        group: group.clone(),
        s,
        omega: SuperCocycle3::from_values(&group, omega),
    }
}

/// Bosonic toric code: Z₂ with trivial s and ω.
pub fn z2_bosonic_tc<S: Scalar>() -> Model<S> {
    let group = FiniteGroup::cyclic(2);
    Model {
        name: "z2-bosonic-tc".into(),
        s: Cocycle2::trivial(&group),
        omega: SuperCocycle3::trivial(&group),
        group,
    }
}

/// Double semion: Z₂ with trivial s and ω(1,1,1) = −1.
pub fn z2_double_semion<S: Scalar>() -> Model<S> {
    let group = FiniteGroup::cyclic(2);
    let mut omega = vec![S::one(); 8];
    omega[7] = -S::one();
    Model {
        name: "z2-double-semion".into(),
        s: Cocycle2::trivial(&group),
        omega: SuperCocycle3::from_values(&group, omega),
        group,
    }
}

/// S₃ with trivial cocycles.
pub fn s3_untwisted<S: Scalar>() -> Model<S> {
    let group = FiniteGroup::symmetric3();
    Model {
        name: "s3-untwisted".into(),
        s: Cocycle2::trivial(&group),
        omega: SuperCocycle3::trivial(&group),
        group,
    }
}

/// The one-element group.
pub fn trivial_group_model<S: Scalar>() -> Model<S> {
    let group = FiniteGroup::cyclic(1);
    Model {
        name: "trivial".into(),
        s: Cocycle2::trivial(&group),
        omega: SuperCocycle3::trivial(&group),
        group,
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "ftc+",
    "ftc-",
    "z2-bosonic-tc",
    "z2-double-semion",
    "s3-untwisted",
    "trivial",
];

pub fn builtin<S: Scalar>(name: &str) -> Result<Model<S>, ModelError> {
    match name {
        "ftc+" => Ok(ftc_model(FtcSign::Plus)),
        "ftc-" => Ok(ftc_model(FtcSign::Minus)),
        "z2-bosonic-tc" => Ok(z2_bosonic_tc()),
        "z2-double-semion" => Ok(z2_double_semion()),
        "s3-untwisted" => Ok(s3_untwisted()),
        "trivial" => Ok(trivial_group_model()),
        other => Err(ModelError::UnknownBuiltin(other.to_string())),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, ModelError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(f) = n.as_f64() {
                BigRational::from_float(f)
                    .ok_or_else(|| ModelError::Parse(format!("non-finite number {f}")))
            } else {
                Err(ModelError::Parse(format!("bad number {n}")))
            }
        }
        Value::String(s) => Exact::rational_from_str(s)
            .ok_or_else(|| ModelError::Parse(format!("bad rational `{s}`"))),
        other => Err(ModelError::Parse(format!("expected rational, got {other}"))),
    }
}

/// Parse a model from the JSON input format:
/// `{order, table, s (optional 2D 0/1 array), omega (optional 3D array of
/// [re, im] rational pairs), name (optional)}`.
///
/// A missing `s` is the trivial cocycle; a missing `omega` is identically 1.
pub fn model_from_json<S: FromRationals>(text: &str) -> Result<Model<S>, ModelError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?;
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| ModelError::Parse("missing `order`".into()))? as usize;
    let table_v = v
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| ModelError::Parse("missing `table`".into()))?;
    let mut table = Vec::with_capacity(order);
    for row in table_v {
        let row = row
            .as_array()
            .ok_or_else(|| ModelError::Parse("table row is not an array".into()))?;
        table.push(
            row.iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| ModelError::Parse("bad table entry".into()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if table.len() != order {
        return Err(ModelError::Parse("table size does not match order".into()));
    }
    let group = FiniteGroup::from_table(&table)?;

    let s = match v.get("s") {
        None | Some(Value::Null) => Cocycle2::trivial(&group),
        Some(sv) => {
            let rows = sv
                .as_array()
                .ok_or_else(|| ModelError::Parse("`s` is not an array".into()))?;
            let mut st = Vec::with_capacity(order);
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| ModelError::Parse("`s` row is not an array".into()))?;
                st.push(
                    row.iter()
                        .map(|x| {
                            x.as_u64()
                                .map(|u| (u & 1) as u8)
                                .ok_or_else(|| ModelError::Parse("bad `s` entry".into()))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            if st.len() != order || st.iter().any(|r| r.len() != order) {
                return Err(ModelError::Parse("`s` shape mismatch".into()));
            }
            Cocycle2::from_table(&group, &st)
                .map_err(|viol| ModelError::Cocycle2(viol.0, viol.1, viol.2))?
        }
    };

    let omega = match v.get("omega") {
        None | Some(Value::Null) => SuperCocycle3::trivial(&group),
        Some(ov) => {
            let a3 = ov
                .as_array()
                .ok_or_else(|| ModelError::Parse("`omega` is not an array".into()))?;
            let mut vals = Vec::with_capacity(order * order * order);
            for a in a3 {
                let a2 = a
                    .as_array()
                    .ok_or_else(|| ModelError::Parse("`omega` shape".into()))?;
                for b in a2 {
                    let a1 = b
                        .as_array()
                        .ok_or_else(|| ModelError::Parse("`omega` shape".into()))?;
                    for pair in a1 {
                        let p = pair
                            .as_array()
                            .filter(|p| p.len() == 2)
                            .ok_or_else(|| ModelError::Parse("`omega` entry is not [re, im]".into()))?;
                        let re = parse_rational(&p[0])?;
                        let im = parse_rational(&p[1])?;
                        vals.push(S::from_rationals(&re, &im));
                    }
                }
            }
            if vals.len() != order * order * order {
                return Err(ModelError::Parse("`omega` shape mismatch".into()));
            }
            SuperCocycle3::from_values(&group, vals)
        }
    };

    let name = v
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("custom")
        .to_string();
    Ok(Model {
        name,
        group,
        s,
        omega,
    })
}

/// Pentagon-census helper: the FTC cocycle pair exists exactly at fourth
/// roots of unity.
pub fn ftc_pentagon_census(root_order: i64) -> usize {
    let group = FiniteGroup::cyclic(2);
    let s = Cocycle2::from_table(&group, &[vec![0, 0], vec![0, 1]]).unwrap();
    solve_graded_pentagon(&group, &s, root_order, 1 << 20)
        .map(|v| v.len())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            let m: Model<Exact> = builtin(name).unwrap();
            m.validate(0.0).unwrap();
        }
    }

    #[test]
    fn ftc_model_values() {
        let m: Model<Exact> = ftc_model(FtcSign::Plus);
        assert_eq!(m.s.eval(1, 1), 1);
        assert_eq!(m.s.eval(0, 1), 0);
        assert_eq!(m.omega.eval(1, 1, 1), Exact::i());
        let md: Model<Exact> = ftc_model(FtcSign::Minus);
        assert_eq!(md.omega.eval(1, 1, 1), -Exact::i());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "order": 2,
            "table": [[0,1],[1,0]],
            "s": [[0,0],[0,1]],
            "omega": [
                [[[1,0],[1,0]],[[1,0],[1,0]]],
                [[[1,0],[1,0]],[[1,0],[0,1]]]
            ],
            "name": "ftc-from-file"
        }"#;
        let m: Model<Exact> = model_from_json(text).unwrap();
        m.validate(0.0).unwrap();
        assert_eq!(m.omega.eval(1, 1, 1), Exact::i());
        assert_eq!(m.name, "ftc-from-file");
    }

    #[test]
    fn json_rejects_bad_cocycle() {
        let text = r#"{"order": 2, "table": [[0,1],[1,0]], "s": [[0,1],[0,0]]}"#;
        assert!(model_from_json::<Exact>(text).is_err());
    }
}
