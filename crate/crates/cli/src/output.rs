use std::io::Write;

use crate::{CliError, Format, Record};

/// Bumped whenever the column set or number format changes.
pub const FORMAT_VERSION: u32 = 1;

const COLUMNS: [&str; 6] = ["command", "n", "nu", "value", "abs_error", "route"];

/// 17 significant digits.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_records<W: Write>(format: Format, rows: &[Record], out: &mut W) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::JsonLines => write_jsonl(rows, out),
        Format::Pretty => write_pretty(rows, out),
    }
}

fn fields(r: &Record) -> [String; 6] {
    [
        r.command.to_string(),
        r.n.to_string(),
        r.nu.map(number).unwrap_or_default(),
        number(r.value),
        number(r.abs_error),
        r.route.to_string(),
    ]
}

fn write_csv<W: Write>(rows: &[Record], out: &mut W) -> Result<(), CliError> {
    writeln!(out, "# format-version: {FORMAT_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(fields(r))?;
    }
    w.flush()?;
    Ok(())
}

fn write_jsonl<W: Write>(rows: &[Record], out: &mut W) -> Result<(), CliError> {
    let columns = serde_json::to_string(&COLUMNS).expect("static strings serialize");
    writeln!(out, "{{\"format_version\":{FORMAT_VERSION},\"columns\":{columns}}}")?;
    let string = |s: &str| serde_json::to_string(s).expect("strings serialize");
    for r in rows {
        writeln!(
            out,
            "{{\"command\":{},\"n\":{},\"nu\":{},\"value\":{},\"abs_error\":{},\"route\":{}}}",
            string(r.command),
            r.n,
            r.nu.map(number).unwrap_or_else(|| "null".into()),
            number(r.value),
            number(r.abs_error),
            string(r.route),
        )?;
    }
    Ok(())
}

fn write_pretty<W: Write>(rows: &[Record], out: &mut W) -> Result<(), CliError> {
    let table: Vec<[String; 6]> = rows.iter().map(fields).collect();
    let mut widths = COLUMNS.map(str::len);
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 6]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| if (1..=4).contains(&i) { format!("{c:>w$}") } else { format!("{c:<w$}") })
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(COLUMNS))?;
    let total: usize = widths.iter().sum::<usize>() + 2 * (COLUMNS.len() - 1);
    writeln!(out, "{}", "-".repeat(total))?;
    for row in &table {
        writeln!(out, "{}", line([&row[0], &row[1], &row[2], &row[3], &row[4], &row[5]]))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> Record {
        Record { command: "det", n: 1, nu: None, value: 4.0, abs_error: 0.5, route: "closed-form" }
    }

    #[test]
    fn csv_has_version_and_header() {
        let mut buf = Vec::new();
        write_records(Format::Csv, &[row()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# format-version: 1\ncommand,n,nu,value,abs_error,route\ndet,1,,4.0000000000000000e0,5.0000000000000000e-1,closed-form\n"
        );
    }

    #[test]
    fn jsonl_round_trips_values() {
        let mut r = row();
        r.value = 0.1 + 0.2;
        r.nu = Some(1.0 / 3.0);
        let mut buf = Vec::new();
        write_records(Format::JsonLines, &[r.clone()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(header["format_version"], 1);
        let rec: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(rec["value"].as_f64().unwrap(), r.value);
        assert_eq!(rec["nu"].as_f64().unwrap(), 1.0 / 3.0);
    }
}
