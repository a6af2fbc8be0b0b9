//! Emitters: JSON (one object per record), CSV, and human tables.
//!
//! Machine formats print floats with 12 significant digits through
//! [`fmt_sig`], which is idempotent under parse→format (12 < 16 decimal
//! digits survive the f64 round trip), so parsing an emitted record and
//! re-emitting it reproduces the bytes exactly.

/// One emitted cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    /// `None` renders as JSON `null` / empty CSV cell.
    Num(Option<f64>),
    Str(String),
}

/// A flat record: ordered (name, value) pairs.
pub trait Record {
    fn fields(&self) -> Vec<(&'static str, Value)>;
}

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub const MACHINE_SIG: usize = 12;
pub const TABLE_SIG: usize = 6;

/// `%g`-style formatting with `sig` significant digits: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = sci.split_once('e').expect("e-format");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if neg { "-" } else { "" };
    if exp < -4 || exp >= sig as i32 {
        let d = digits.trim_end_matches('0');
        let d = if d.is_empty() { "0" } else { d };
        let m = if d.len() == 1 {
            d.to_string()
        } else {
            format!("{}.{}", &d[..1], &d[1..])
        };
        format!("{sign}{m}e{exp}")
    } else if exp >= 0 {
        let e = exp as usize;
        let (int_part, frac_part) = if digits.len() > e + 1 {
            (digits[..e + 1].to_string(), digits[e + 1..].to_string())
        } else {
            (
                format!("{}{}", digits, "0".repeat(e + 1 - digits.len())),
                String::new(),
            )
        };
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    } else {
        let zeros = (-exp - 1) as usize;
        let frac_digits = format!("{}{}", "0".repeat(zeros), digits);
        let frac = frac_digits.trim_end_matches('0');
        format!("{sign}0.{frac}")
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn value_json(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Num(Some(x)) if x.is_finite() => fmt_sig(*x, MACHINE_SIG),
        Value::Num(_) => "null".to_string(),
        Value::Str(s) => format!("\"{}\"", json_escape(s)),
    }
}

fn value_csv(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Num(Some(x)) if x.is_finite() => fmt_sig(*x, MACHINE_SIG),
        Value::Num(_) => String::new(),
        Value::Str(s) => s.clone(),
    }
}

fn value_table(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Num(Some(x)) if x.is_finite() => fmt_sig(*x, TABLE_SIG),
        Value::Num(_) => "-".to_string(),
        Value::Str(s) => s.clone(),
    }
}

/// Single-line JSON object with the record's field order.
pub fn to_json(r: &dyn Record) -> String {
    let body: Vec<String> = r
        .fields()
        .iter()
        .map(|(k, v)| format!("\"{}\":{}", k, value_json(v)))
        .collect();
    format!("{{{}}}", body.join(","))
}

pub fn csv_header(r: &dyn Record) -> String {
    r.fields()
        .iter()
        .map(|(k, _)| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn csv_row(r: &dyn Record) -> String {
    r.fields()
        .iter()
        .map(|(_, v)| value_csv(v))
        .collect::<Vec<_>>()
        .join(",")
}

/// Two-column key/value table for a single record.
pub fn single_table(r: &dyn Record) -> String {
    let fields = r.fields();
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    fields
        .iter()
        .map(|(k, v)| format!("{k:width$}  {}", value_table(v)))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Columnar table for a record stream.
pub fn stream_table(rows: &[Box<dyn Record>]) -> String {
    if rows.is_empty() {
        return String::new();
    }
    let header: Vec<String> = rows[0].fields().iter().map(|(k, _)| k.to_string()).collect();
    let mut cells: Vec<Vec<String>> = vec![header.clone()];
    for r in rows {
        cells.push(r.fields().iter().map(|(_, v)| value_table(v)).collect());
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|row| row[i].len()).max().unwrap_or(0))
        .collect();
    cells
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(i, c)| format!("{c:>width$}", width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Emit a stream of records in the chosen format (JSON Lines for `json`).
pub fn emit_stream(rows: &[Box<dyn Record>], format: Format) -> String {
    match format {
        Format::Json => rows
            .iter()
            .map(|r| to_json(r.as_ref()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => {
            let mut out = Vec::with_capacity(rows.len() + 1);
            if let Some(first) = rows.first() {
                out.push(csv_header(first.as_ref()));
            }
            out.extend(rows.iter().map(|r| csv_row(r.as_ref())));
            out.join("\n")
        }
        Format::Table => stream_table(rows),
    }
}

/// Emit a single record.
pub fn emit_single(r: &dyn Record, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => format!("{}\n{}", csv_header(r), csv_row(r)),
        Format::Table => single_table(r),
    }
}
