//! Scalar values and column types.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DataType {
    Integer,
    Float,
    Text,
    Boolean,
}

impl DataType {
    pub fn name(self) -> &'static str {
        match self {
            DataType::Integer => "INTEGER",
            DataType::Float => "FLOAT",
            DataType::Text => "TEXT",
            DataType::Boolean => "BOOLEAN",
        }
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, DataType::Integer | DataType::Float)
    }

    /// Parses a type name as written in `CREATE TABLE`.
    pub fn from_sql(name: &str) -> Option<DataType> {
        let upper = name.to_ascii_uppercase();
        Some(match upper.as_str() {
            "INT" | "INTEGER" | "BIGINT" | "SMALLINT" => DataType::Integer,
            "FLOAT" | "DOUBLE" | "REAL" | "NUMERIC" | "DECIMAL" => DataType::Float,
            "TEXT" | "VARCHAR" | "CHAR" | "STRING" | "DATE" => DataType::Text,
            "BOOL" | "BOOLEAN" => DataType::Boolean,
            _ => return None,
        })
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A typed scalar. Comparisons involving `Null` are false (no three-valued logic).
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Value {
    pub fn is_null(&self) -> bool {
        matches!(self, Value::Null)
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Null => "NULL",
            Value::Int(_) => "INTEGER",
            Value::Float(_) => "FLOAT",
            Value::Text(_) => "TEXT",
            Value::Bool(_) => "BOOLEAN",
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            Value::Float(f) if f.fract() == 0.0 && f.is_finite() => Some(*f as i64),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(v) => Some(*v as f64),
            Value::Float(f) => Some(*f),
            _ => None,
        }
    }

    /// Orders two values of compatible types. Returns `None` for nulls and
    /// incomparable types.
    pub fn compare(&self, other: &Value) -> Option<Ordering> {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
            (Value::Int(a), Value::Float(b)) => (*a as f64).partial_cmp(b),
            (Value::Float(a), Value::Int(b)) => a.partial_cmp(&(*b as f64)),
            (Value::Float(a), Value::Float(b)) => a.partial_cmp(b),
            (Value::Text(a), Value::Text(b)) => Some(a.cmp(b)),
            (Value::Bool(a), Value::Bool(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }

    /// SQL equality under the null-is-false rule.
    pub fn sql_eq(&self, other: &Value) -> bool {
        self.compare(other) == Some(Ordering::Equal)
    }

    /// Checks the value against a column type, widening integers to floats.
    pub fn coerce_to(self, ty: DataType) -> Option<Value> {
        match (self, ty) {
            (Value::Null, _) => Some(Value::Null),
            (v @ Value::Int(_), DataType::Integer) => Some(v),
            (Value::Int(i), DataType::Float) => Some(Value::Float(i as f64)),
            (v @ Value::Float(_), DataType::Float) => Some(v),
            (v @ Value::Text(_), DataType::Text) => Some(v),
            (v @ Value::Bool(_), DataType::Boolean) => Some(v),
            _ => None,
        }
    }

    /// Parses a CSV cell. Empty cells are null.
    pub fn parse_cell(cell: &str, ty: DataType) -> Result<Value, String> {
        if cell.is_empty() {
            return Ok(Value::Null);
        }
        match ty {
            DataType::Integer => cell
                .trim()
                .parse::<i64>()
                .map(Value::Int)
                .map_err(|_| format!("cannot parse '{cell}' as INTEGER")),
            DataType::Float => cell
                .trim()
                .parse::<f64>()
                .map(Value::Float)
                .map_err(|_| format!("cannot parse '{cell}' as FLOAT")),
            DataType::Boolean => match cell.trim().to_ascii_lowercase().as_str() {
                "true" | "t" | "1" => Ok(Value::Bool(true)),
                "false" | "f" | "0" => Ok(Value::Bool(false)),
                _ => Err(format!("cannot parse '{cell}' as BOOLEAN")),
            },
            DataType::Text => Ok(Value::Text(cell.to_string())),
        }
    }

    pub(crate) fn key(&self) -> Option<Key> {
        match self {
            Value::Null => None,
            Value::Int(i) => Some(Key::Int(*i)),
            Value::Float(f) => {
                if f.fract() == 0.0 && f.is_finite() && f.abs() < 9.0e15 {
                    Some(Key::Int(*f as i64))
                } else {
                    Some(Key::Float((f + 0.0).to_bits()))
                }
            }
            Value::Text(s) => Some(Key::Text(s.clone())),
            Value::Bool(b) => Some(Key::Bool(*b)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Null => f.write_str("NULL"),
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(v) => write!(f, "{v}"),
            Value::Text(s) => f.write_str(s),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

/// Hashable projection of a non-null value; integral floats hash as integers
/// so that `1` and `1.0` meet in an index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Key {
    Int(i64),
    Float(u64),
    Text(String),
    Bool(bool),
}
