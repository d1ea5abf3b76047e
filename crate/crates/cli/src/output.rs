//! CSV and JSON emission of sweep tables.

use crate::args::Format;
use crate::error::CliError;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const OUTPUT_DIR_VAR: &str = "WEDGERATE_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub values: Vec<f64>,
    pub est_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    /// Fixed parameters, in display order.
    pub params: Vec<(&'static str, String)>,
    pub x_name: &'static str,
    pub columns: &'static [&'static str],
    pub rows: Vec<Row>,
}

impl Table {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }
}

/// 17 significant digits, so every value round-trips.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "nan".to_string()
    }
}

pub fn write_csv(t: &Table, w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "# wedgerate {} {}", env!("CARGO_PKG_VERSION"), t.command)?;
    for (k, v) in &t.params {
        writeln!(w, "# {k} = {v}")?;
    }
    write!(w, "{}", t.x_name)?;
    for c in t.columns {
        write!(w, ",{c}")?;
    }
    writeln!(w, ",est_error,converged")?;
    for r in &t.rows {
        write!(w, "{}", fmt_float(r.x))?;
        for v in &r.values {
            write!(w, ",{}", fmt_float(*v))?;
        }
        writeln!(w, ",{},{}", fmt_float(r.est_error), r.converged)?;
    }
    Ok(())
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn to_json(t: &Table) -> Value {
    let params: Map<String, Value> = t
        .params
        .iter()
        .map(|(k, v)| ((*k).to_string(), Value::String(v.clone())))
        .collect();
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert(t.x_name.to_string(), number(r.x));
            for (c, v) in t.columns.iter().zip(&r.values) {
                m.insert((*c).to_string(), number(*v));
            }
            m.insert("est_error".into(), number(r.est_error));
            m.insert("converged".into(), Value::Bool(r.converged));
            Value::Object(m)
        })
        .collect();
    json!({
        "tool": format!("wedgerate {}", env!("CARGO_PKG_VERSION")),
        "command": t.command,
        "parameters": params,
        "rows": rows,
    })
}

pub fn write_table(t: &Table, format: Format, w: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => write_csv(t, w),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &to_json(t))?;
            writeln!(w)
        }
    }
}

/// Where `--out` points, after applying the output-directory variable to relative paths.
pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(
    t: &Table,
    format: Format,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let io = |context: String| move |source| CliError::Io { context, source };
    match out {
        None => write_table(t, format, stdout).map_err(io("writing output".into())),
        Some(path) => {
            let path = resolve_out(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)
                    .map_err(io(format!("creating {}", parent.display())))?;
            }
            let file =
                std::fs::File::create(&path).map_err(io(format!("creating {}", path.display())))?;
            let mut w = std::io::BufWriter::new(file);
            write_table(t, format, &mut w)
                .and_then(|_| w.flush())
                .map_err(io(format!("writing {}", path.display())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        Table {
            command: "wedge-decay",
            params: vec![("p", "3".into())],
            x_name: "r_over_lambda",
            columns: &["gamma_z"],
            rows: vec![
                Row {
                    x: 0.5,
                    values: vec![1.0 / 3.0],
                    est_error: 0.25,
                    converged: true,
                },
                Row {
                    x: 1.0,
                    values: vec![f64::NAN],
                    est_error: 1.0,
                    converged: false,
                },
            ],
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&table(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# wedgerate "));
        assert_eq!(lines[1], "# p = 3");
        assert_eq!(lines[2], "r_over_lambda,gamma_z,est_error,converged");
        assert_eq!(
            lines[3],
            "5.0000000000000000e-1,3.3333333333333331e-1,2.5000000000000000e-1,true"
        );
        assert!(lines[4].ends_with(",nan,1.0000000000000000e0,false"));
    }

    #[test]
    fn csv_values_round_trip() {
        for v in [1.0 / 3.0, 2.0f64.sqrt() * 1e-300, -7.123456789012345e22] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_uses_null_for_nan() {
        let v = to_json(&table());
        assert_eq!(v["rows"][1]["gamma_z"], Value::Null);
        assert_eq!(v["rows"][0]["converged"], Value::Bool(true));
        assert_eq!(v["parameters"]["p"], "3");
    }
}
