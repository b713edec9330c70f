//! JSON interchange. Every document carries the field, the diameter, a kind
//! and a payload; scalars are strings such as "-3/4".

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::matrix::{Matrix, MatrixError};
use crate::params::{ParameterArray, ParamsError, TddSequence};
use crate::primary::{PrimaryData, PrimarySeq, TypeTag};
use crate::verify::MatrixPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing key {0:?}")]
    Missing(String),
    #[error("{0:?} has the wrong JSON type")]
    WrongType(String),
    #[error("{key:?} has length {found}, expected {expected}")]
    Length { key: String, expected: usize, found: usize },
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("unknown primary data type {0:?}")]
    UnknownType(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    ParameterArray(ParameterArray),
    Tdd(TddSequence),
    MatrixPair(MatrixPair),
    PrimaryData(PrimaryData),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub field: Field,
    pub d: usize,
    pub payload: Payload,
}

impl From<ParameterArray> for Document {
    fn from(p: ParameterArray) -> Document {
        Document { field: p.field(), d: p.d(), payload: Payload::ParameterArray(p) }
    }
}

impl From<TddSequence> for Document {
    fn from(t: TddSequence) -> Document {
        Document { field: t.field(), d: t.d(), payload: Payload::Tdd(t) }
    }
}

impl From<MatrixPair> for Document {
    fn from(m: MatrixPair) -> Document {
        Document { field: m.a.field(), d: m.diameter(), payload: Payload::MatrixPair(m) }
    }
}

impl Document {
    pub fn primary(pd: PrimaryData, d: usize) -> Document {
        Document { field: pd.field(), d, payload: Payload::PrimaryData(pd) }
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::ParameterArray(_) => "parameter_array",
            Payload::Tdd(_) => "tdd",
            Payload::MatrixPair(_) => "matrix_pair",
            Payload::PrimaryData(_) => "primary_data",
        }
    }

    pub fn to_value(&self) -> Value {
        let payload = match &self.payload {
            Payload::ParameterArray(p) => json!({
                "theta": strings(p.theta()),
                "thetastar": strings(p.thetastar()),
                "phi1": strings(p.phi1()),
                "phi2": strings(p.phi2()),
            }),
            Payload::Tdd(t) => json!({
                "a": strings(t.a()),
                "x": strings(t.x()),
                "thetastar": strings(t.thetastar()),
            }),
            Payload::MatrixPair(m) => json!({
                "A": matrix_value(&m.a),
                "Astar": matrix_value(&m.astar),
            }),
            Payload::PrimaryData(pd) => primary_value(pd),
        };
        json!({
            "field": self.field.to_string(),
            "d": self.d,
            "kind": self.kind(),
            "payload": payload,
        })
    }

    /// Canonical text: sorted keys, two-space indentation.
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values are plain JSON")
    }

    pub fn parse(text: &str) -> Result<Document, DocumentError> {
        let v: Value = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        Document::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Document, DocumentError> {
        let obj = v.as_object().ok_or_else(|| DocumentError::WrongType("document".into()))?;
        let field: Field = get_str(obj, "field")?.parse()?;
        let d = get(obj, "d")?.as_u64().ok_or_else(|| DocumentError::WrongType("d".into()))? as usize;
        let kind = get_str(obj, "kind")?;
        let body = get(obj, "payload")?.as_object().ok_or_else(|| DocumentError::WrongType("payload".into()))?;
        let payload = match kind {
            "parameter_array" => Payload::ParameterArray(ParameterArray::new(
                seq(body, "theta", field, d + 1)?,
                seq(body, "thetastar", field, d + 1)?,
                seq(body, "phi1", field, d)?,
                seq(body, "phi2", field, d)?,
            )?),
            "tdd" => Payload::Tdd(TddSequence::new(
                seq(body, "a", field, d + 1)?,
                seq(body, "x", field, d)?,
                seq(body, "thetastar", field, d + 1)?,
            )?),
            "matrix_pair" => Payload::MatrixPair(MatrixPair::new(
                matrix(body, "A", field, d + 1)?,
                matrix(body, "Astar", field, d + 1)?,
            )?),
            "primary_data" => Payload::PrimaryData(primary(body, field)?),
            other => return Err(DocumentError::UnknownKind(other.to_string())),
        };
        Ok(Document { field, d, payload })
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn matrix_value(m: &Matrix) -> Value {
    m.rows().iter().map(|r| strings(r)).collect::<Vec<_>>().into()
}

const PRIMARY_KEYS: [&str; 7] = ["delta", "mu", "h", "deltastar", "mustar", "hstar", "tau"];
const PRIMARY_KEYS_III: [&str; 7] = ["delta", "s", "h", "deltastar", "sstar", "hstar", "tau"];

fn primary_value(pd: &PrimaryData) -> Value {
    let keys = if pd.tag() == TypeTag::IIIPlus { PRIMARY_KEYS_III } else { PRIMARY_KEYS };
    let mut m = Map::new();
    m.insert("type".into(), pd.tag().to_string().into());
    if let Some(q) = pd.q() {
        m.insert("q".into(), q.to_string().into());
    }
    for (k, s) in keys.iter().zip(pd.seq().values()) {
        m.insert((*k).into(), s.to_string().into());
    }
    Value::Object(m)
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, DocumentError> {
    obj.get(key).ok_or_else(|| DocumentError::Missing(key.to_string()))
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, DocumentError> {
    get(obj, key)?.as_str().ok_or_else(|| DocumentError::WrongType(key.to_string()))
}

// Strings are canonical; plain JSON integers are also accepted.
fn scalar(v: &Value, key: &str, field: Field) -> Result<Scalar, DocumentError> {
    match v {
        Value::String(s) => Ok(field.parse(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(field.parse(&n.to_string())?),
        _ => Err(DocumentError::WrongType(key.to_string())),
    }
}

fn seq_value(v: &Value, key: &str, field: Field, len: usize) -> Result<Vec<Scalar>, DocumentError> {
    let arr = v.as_array().ok_or_else(|| DocumentError::WrongType(key.to_string()))?;
    if arr.len() != len {
        return Err(DocumentError::Length { key: key.to_string(), expected: len, found: arr.len() });
    }
    arr.iter().map(|x| scalar(x, key, field)).collect()
}

fn seq(obj: &Map<String, Value>, key: &str, field: Field, len: usize) -> Result<Vec<Scalar>, DocumentError> {
    seq_value(get(obj, key)?, key, field, len)
}

fn matrix(obj: &Map<String, Value>, key: &str, field: Field, n: usize) -> Result<Matrix, DocumentError> {
    let rows = get(obj, key)?.as_array().ok_or_else(|| DocumentError::WrongType(key.to_string()))?;
    if rows.len() != n {
        return Err(DocumentError::Length { key: key.to_string(), expected: n, found: rows.len() });
    }
    let rows = rows.iter().map(|r| seq_value(r, key, field, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn primary(obj: &Map<String, Value>, field: Field) -> Result<PrimaryData, DocumentError> {
    let tag = get_str(obj, "type")?;
    let keys = if tag == "III+" { PRIMARY_KEYS_III } else { PRIMARY_KEYS };
    let mut vals = Vec::with_capacity(7);
    for k in keys {
        vals.push(scalar(get(obj, k)?, k, field)?);
    }
    let seq = PrimarySeq::new(vals.try_into().expect("seven keys"));
    match tag {
        "I" => Ok(PrimaryData::TypeI { q: scalar(get(obj, "q")?, "q", field)?, seq }),
        "II" => Ok(PrimaryData::TypeII(seq)),
        "III+" => Ok(PrimaryData::TypeIIIPlus(seq)),
        other => Err(DocumentError::UnknownType(other.to_string())),
    }
}
