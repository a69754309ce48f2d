use std::path::Path;

use super::{Column, Schema};
use crate::error::{Error, Result};
use crate::value::{DataType, Value};

/// Reads a headered CSV file into rows ordered like `schema`. Header names
/// are matched case-insensitively and may appear in any order.
pub fn read_rows(path: &Path, schema: &Schema) -> Result<Vec<Vec<Value>>> {
    let csv_err = |line: u64, message: String| Error::Csv {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    let headers = reader.headers().map_err(|e| csv_err(1, e.to_string()))?.clone();
    let mut order = vec![usize::MAX; schema.len()];
    for (pos, h) in headers.iter().enumerate() {
        match schema.index_of(h.trim()) {
            Some(col) if order[col] == usize::MAX => order[col] = pos,
            _ => return Err(csv_err(1, format!("header '{h}' does not match the table schema"))),
        }
    }
    if let Some(missing) = order.iter().position(|&p| p == usize::MAX) {
        return Err(csv_err(
            1,
            format!("header is missing column '{}'", schema.column(missing).name),
        ));
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut row = Vec::with_capacity(schema.len());
        for (col, &pos) in order.iter().enumerate() {
            let ty = schema.column(col).ty;
            let v = Value::parse_cell(rec.get(pos).unwrap_or(""), ty).map_err(|m| csv_err(line, m))?;
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Derives a schema from a headered CSV file: a column is INTEGER if every
/// non-empty cell parses as one, else FLOAT, else BOOLEAN, else TEXT.
pub fn infer_schema(path: &Path) -> Result<Schema> {
    let io = |e: csv::Error| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(io)?;
    let headers = reader.headers().map_err(io)?.clone();
    // Per column: could still be [INTEGER, FLOAT, BOOLEAN].
    let mut fits = vec![[true; 3]; headers.len()];
    let kinds = [DataType::Integer, DataType::Float, DataType::Boolean];
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Csv {
            path: path.to_path_buf(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        for (f, cell) in fits.iter_mut().zip(rec.iter()) {
            for (ok, ty) in f.iter_mut().zip(kinds) {
                *ok &= Value::parse_cell(cell, ty).is_ok();
            }
        }
    }
    Schema::new(
        headers
            .iter()
            .zip(fits)
            .map(|(h, f)| {
                let ty = kinds
                    .iter()
                    .zip(f)
                    .find(|(_, ok)| *ok)
                    .map_or(DataType::Text, |(t, _)| *t);
                Column::new(h.trim(), ty)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn schema() -> Schema {
        Schema::new(vec![
            Column::new("uId", DataType::Integer),
            Column::new("lName", DataType::Text),
        ])
        .unwrap()
    }

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reorders_columns_by_header() {
        let f = file("lName,uId\nSmith,1\n\"Lee, J\",2\n,3\n");
        let rows = read_rows(f.path(), &schema()).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1], vec![Value::Int(2), Value::from("Lee, J")]);
        assert_eq!(rows[2][1], Value::Null);
    }

    #[test]
    fn header_mismatch() {
        let f = file("id,name\n1,a\n");
        assert!(matches!(
            read_rows(f.path(), &schema()),
            Err(Error::Csv { line: 1, .. })
        ));
    }

    #[test]
    fn bad_cell_names_its_line() {
        let f = file("uId,lName\n1,a\n2,b\n3,c\nabc,d\n");
        match read_rows(f.path(), &schema()) {
            Err(Error::Csv { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infers_column_types() {
        let f = file("id,w,flag,name,mixed\n1,2,true,a,1.5\n2,2.5,,b,true\n3,,false,,2\n");
        let s = infer_schema(f.path()).unwrap();
        let types: Vec<DataType> = s.columns().iter().map(|c| c.ty).collect();
        assert_eq!(
            types,
            vec![
                DataType::Integer,
                DataType::Float,
                DataType::Boolean,
                DataType::Text,
                DataType::Text
            ]
        );
    }
}
