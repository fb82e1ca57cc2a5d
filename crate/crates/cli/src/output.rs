//! CSV, JSON and SVG encodings of band tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Bands at one frequency `p/q`, in the lambda variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub q: u64,
    pub p: i64,
    pub bands: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandTable {
    pub kappa: f64,
    pub variant: String,
    pub entries: Vec<Entry>,
    /// Root isolation width and merge tolerance (not part of the CSV).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merge_tol: Option<f64>,
}

pub const CSV_HEADER: &str = "q,p,band_index,lambda_lo,lambda_hi";

/// 17 significant digits; negative zero printed as zero.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn to_csv(table: &BandTable) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for e in &table.entries {
        for (i, [lo, hi]) in e.bands.iter().enumerate() {
            let _ = writeln!(s, "{},{},{},{},{}", e.q, e.p, i, fmt_float(*lo), fmt_float(*hi));
        }
    }
    s
}

pub fn from_csv(text: &str) -> Result<Vec<Entry>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err("missing CSV header".into());
    }
    let mut out: Vec<Entry> = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(format!("bad row {line:?}"));
        }
        let bad = || format!("bad row {line:?}");
        let q: u64 = f[0].parse().map_err(|_| bad())?;
        let p: i64 = f[1].parse().map_err(|_| bad())?;
        let lo: f64 = f[3].parse().map_err(|_| bad())?;
        let hi: f64 = f[4].parse().map_err(|_| bad())?;
        match out.last_mut() {
            Some(e) if e.q == q && e.p == p => e.bands.push([lo, hi]),
            _ => out.push(Entry { q, p, bands: vec![[lo, hi]] }),
        }
    }
    Ok(out)
}

pub fn to_json(table: &BandTable) -> String {
    let mut s = serde_json::to_string_pretty(table).expect("band table serializes");
    s.push('\n');
    s
}

/// Static plot: lambda horizontally, `p/q` vertically, one segment per band.
pub fn to_svg(table: &BandTable) -> String {
    let (w, h, pad) = (900.0, 700.0, 50.0);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for e in &table.entries {
        for [a, b] in &e.bands {
            lo = lo.min(*a);
            hi = hi.max(*b);
        }
    }
    if !lo.is_finite() {
        lo = -1.0;
        hi = 1.0;
    }
    if hi - lo < 1e-12 {
        lo -= 0.5;
        hi += 0.5;
    }
    let x = |v: f64| pad + (v - lo) / (hi - lo) * (w - 2.0 * pad);
    let y = |f: f64| h - pad - f * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{pad}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{pad}" y1="{pad}" x2="{pad}" y2="{b}"/></g>"#,
        b = h - pad,
        r = w - pad
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12"><text x="{:.2}" y="{:.2}">{:.4}</text><text x="{:.2}" y="{:.2}" text-anchor="end">{:.4}</text><text x="{:.2}" y="{:.2}" text-anchor="middle">lambda (kappa = {})</text><text x="10" y="{:.2}">0</text><text x="10" y="{:.2}">1</text><text x="10" y="{:.2}">p/q</text></g>"#,
        pad,
        h - pad + 18.0,
        lo,
        w - pad,
        h - pad + 18.0,
        hi,
        w / 2.0,
        h - 10.0,
        table.kappa,
        y(0.0),
        y(1.0),
        h / 2.0
    );
    let _ = writeln!(s, r#"<g stroke="navy" stroke-width="1.5">"#);
    for e in &table.entries {
        let yy = y(e.p as f64 / e.q as f64);
        for [a, b] in &e.bands {
            // keep zero-width bands visible
            let (x1, x2) = (x(*a), x(*b).max(x(*a) + 0.5));
            let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{yy:.3}" x2="{x2:.3}" y2="{yy:.3}"/>"#);
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> BandTable {
        BandTable {
            kappa: 1.0,
            variant: "r".into(),
            entries: vec![
                Entry { q: 1, p: 0, bands: vec![[-0.0, 4.0]] },
                Entry { q: 2, p: 1, bands: vec![[-8f64.sqrt(), -2.0], [2.0, 8f64.sqrt()]] },
            ],
            tol: None,
            merge_tol: None,
        }
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&table());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "1,0,0,0.0000000000000000e0,4.0000000000000000e0");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn csv_json_roundtrip() {
        let t = table();
        let from_c = from_csv(&to_csv(&t)).unwrap();
        let from_j: BandTable = serde_json::from_str(&to_json(&t)).unwrap();
        for (a, b) in from_c.iter().zip(&from_j.entries) {
            assert_eq!((a.q, a.p), (b.q, b.p));
            for (x, y) in a.bands.iter().zip(&b.bands) {
                assert!((x[0] - y[0]).abs() <= 1e-15 * x[0].abs().max(1.0));
                assert!((x[1] - y[1]).abs() <= 1e-15 * x[1].abs().max(1.0));
            }
        }
    }

    #[test]
    fn svg_has_one_segment_per_band() {
        let svg = to_svg(&table());
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<line").count(), 2 + 3);
    }
}
