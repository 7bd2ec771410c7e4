//! File formats: rasters (binary PGM and CSV matrices), coefficient
//! matrices and Fourier tables.

use std::io::{BufRead, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::basis::BasisSpec;
use crate::bessel::BoundaryCondition;
use crate::error::{Error, Result};
use crate::sampling::{FourierTable, Raster};
use crate::spectra::CoefficientMatrix;

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads a PGM (`P5`) or CSV raster, choosing by content. PGM samples are
/// divided by `maxval`; CSV values are taken as-is.
pub fn read_raster(path: &Path) -> Result<Raster> {
    let bytes = std::fs::read(path).map_err(io_error(path))?;
    if bytes.starts_with(b"P5") {
        parse_pgm(&bytes)
    } else {
        parse_csv_matrix(std::str::from_utf8(&bytes).map_err(|_| {
            Error::parse(path.display().to_string(), "raster is neither PGM nor UTF-8 CSV")
        })?)
    }
}

fn pgm_token(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse("PGM header", "expected a decimal number"))
}

pub fn parse_pgm(bytes: &[u8]) -> Result<Raster> {
    if !bytes.starts_with(b"P5") {
        return Err(Error::parse("PGM header", "missing P5 magic"));
    }
    let mut pos = 2;
    let cols = pgm_token(bytes, &mut pos)?;
    let rows = pgm_token(bytes, &mut pos)?;
    let maxval = pgm_token(bytes, &mut pos)?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::parse("PGM header", format!("maxval {maxval} out of range")));
    }
    if cols == 0 || rows == 0 {
        return Err(Error::parse("PGM header", "zero width or height"));
    }
    // exactly one whitespace byte separates the header from the samples
    pos += 1;
    let wide = maxval > 255;
    let need = rows * cols * if wide { 2 } else { 1 };
    let body = bytes
        .get(pos..pos + need)
        .ok_or_else(|| Error::parse("PGM body", format!("expected {need} bytes of samples")))?;
    let scale = 1.0 / maxval as f64;
    let data = if wide {
        body.chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64 * scale)
            .collect()
    } else {
        body.iter().map(|&b| b as f64 * scale).collect()
    };
    Raster::new(rows, cols, data)
}

pub fn parse_csv_matrix(text: &str) -> Result<Raster> {
    let mut data = Vec::new();
    let mut rows = 0;
    let mut cols = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ctx = || format!("raster line {}", lineno + 1);
        let before = data.len();
        for field in line.split(',') {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| Error::parse(ctx(), format!("`{}` is not a number", field.trim())))?;
            data.push(v);
        }
        let width = data.len() - before;
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => {
                return Err(Error::parse(ctx(), format!("expected {c} columns, got {width}")))
            }
            _ => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or_else(|| Error::parse("raster", "no rows"))?;
    Raster::new(rows, cols, data)
}

/// Writes a raster as a CSV matrix with 17 significant digits.
pub fn write_csv_matrix<W: Write>(mut w: W, raster: &Raster) -> std::io::Result<()> {
    for r in 0..raster.rows() {
        let row: Vec<String> = (0..raster.cols())
            .map(|c| format!("{:.16e}", raster.get(r, c)))
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Writes an 8-bit PGM, clamping to `[0, 1]` before scaling to 255.
pub fn write_pgm<W: Write>(mut w: W, raster: &Raster) -> std::io::Result<()> {
    write!(w, "P5\n{} {}\n255\n", raster.cols(), raster.rows())?;
    let body: Vec<u8> = raster
        .data()
        .iter()
        .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    w.write_all(&body)
}

/// Header `#bc=..,a=..,M=..,N=..,K=..[,G=..]` then rows `bc,a,n,m,re,im`.
pub fn write_coefficients<W: Write>(mut w: W, c: &CoefficientMatrix) -> std::io::Result<()> {
    let s = c.spec();
    write!(
        w,
        "#bc={},a={:.16e},M={},N={},K={}",
        s.condition, s.radius, s.max_angular, s.max_radial, s.cutoff
    )?;
    if let Some(g) = c.grid() {
        write!(w, ",G={g}")?;
    }
    writeln!(w)?;
    writeln!(w, "bc,a,n,m,re,im")?;
    for (n, m, v) in c.iter() {
        writeln!(
            w,
            "{},{:.16e},{},{},{:.16e},{:.16e}",
            s.condition, s.radius, n, m, v.re, v.im
        )?;
    }
    Ok(())
}

fn header_fields(line: &str) -> Result<Vec<(String, String)>> {
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| Error::parse("coefficient header", "expected a line starting with `#`"))?;
    body.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse("coefficient header", format!("`{kv}` is not key=value")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub fn read_coefficients<R: BufRead>(r: R) -> Result<CoefficientMatrix> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .transpose()
        .map_err(|e| Error::parse("coefficients", e.to_string()))?
        .ok_or_else(|| Error::parse("coefficients", "empty file"))?;
    let fields = header_fields(&header)?;
    let get = |key: &str| -> Result<&str> {
        fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::parse("coefficient header", format!("missing field `{key}`")))
    };
    let num = |key: &str| -> Result<u32> {
        get(key)?
            .parse()
            .map_err(|_| Error::parse("coefficient header", format!("field `{key}` is not an integer")))
    };
    let condition: BoundaryCondition = get("bc")?.parse()?;
    let radius: f64 = get("a")?
        .parse()
        .map_err(|_| Error::parse("coefficient header", "field `a` is not a number"))?;
    let spec = BasisSpec::new(radius, condition, num("M")?, num("N")?, num("K")?)?;
    let grid = match fields.iter().find(|(k, _)| k == "G") {
        Some((_, v)) => Some(
            v.parse()
                .map_err(|_| Error::parse("coefficient header", "field `G` is not an integer"))?,
        ),
        None => None,
    };
    let mut c = CoefficientMatrix::zeros(spec).with_grid(grid);
    let mut seen = vec![false; spec.len()];
    for (lineno, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::parse("coefficients", e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("bc,") {
            continue;
        }
        let ctx = || format!("coefficients line {}", lineno + 2);
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 6 {
            return Err(Error::parse(ctx(), "expected 6 fields `bc,a,n,m,re,im`"));
        }
        let n: u32 = f[2]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `n` is not an integer"))?;
        let m: i32 = f[3]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `m` is not an integer"))?;
        let re: f64 = f[4]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `re` is not a number"))?;
        let im: f64 = f[5]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `im` is not a number"))?;
        if !spec.contains(n, m) {
            return Err(Error::parse(ctx(), format!("index (n={n}, m={m}) outside the header spec")));
        }
        let slot = (n as usize - 1) * spec.width() + (m + spec.max_angular as i32) as usize;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::parse(ctx(), format!("duplicate index (n={n}, m={m})")));
        }
        c.set(n, m, Complex64::new(re, im));
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        let n = i / spec.width() + 1;
        let m = (i % spec.width()) as i32 - spec.max_angular as i32;
        return Err(Error::parse("coefficients", format!("missing index (n={n}, m={m})")));
    }
    Ok(c)
}

/// Header `#K=..,a=..` then rows `k1,k2,re,im`.
pub fn write_fourier_table<W: Write>(mut w: W, t: &FourierTable) -> std::io::Result<()> {
    writeln!(w, "#K={},a={:.16e}", t.cutoff(), t.radius())?;
    writeln!(w, "k1,k2,re,im")?;
    for ((k1, k2), v) in t.iter() {
        writeln!(w, "{k1},{k2},{:.16e},{:.16e}", v.re, v.im)?;
    }
    Ok(())
}

pub fn read_fourier_table<R: Read>(mut r: R) -> Result<FourierTable> {
    let mut text = String::new();
    r.read_to_string(&mut text)
        .map_err(|e| Error::parse("fourier table", e.to_string()))?;
    let mut lines = text.lines();
    let fields = header_fields(lines.next().unwrap_or_default())?;
    let get = |key: &str| -> Result<&str> {
        fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::parse("fourier table header", format!("missing field `{key}`")))
    };
    let cutoff: u32 = get("K")?
        .parse()
        .map_err(|_| Error::parse("fourier table header", "field `K` is not an integer"))?;
    let radius: f64 = get("a")?
        .parse()
        .map_err(|_| Error::parse("fourier table header", "field `a` is not a number"))?;
    let side = 2 * cutoff as usize + 1;
    let mut entries = vec![None; side * side];
    let k = cutoff as i64;
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("k1") {
            continue;
        }
        let ctx = || format!("fourier table line {}", lineno + 2);
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 4 {
            return Err(Error::parse(ctx(), "expected 4 fields `k1,k2,re,im`"));
        }
        let k1: i64 = f[0].parse().map_err(|_| Error::parse(ctx(), "field `k1` is not an integer"))?;
        let k2: i64 = f[1].parse().map_err(|_| Error::parse(ctx(), "field `k2` is not an integer"))?;
        let re: f64 = f[2].parse().map_err(|_| Error::parse(ctx(), "field `re` is not a number"))?;
        let im: f64 = f[3].parse().map_err(|_| Error::parse(ctx(), "field `im` is not a number"))?;
        if k1.abs() > k || k2.abs() > k {
            return Err(Error::parse(ctx(), "frequency outside the header cutoff"));
        }
        entries[((k1 + k) * side as i64 + (k2 + k)) as usize] = Some(Complex64::new(re, im));
    }
    let entries = entries
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::parse("fourier table", "missing rows"))?;
    FourierTable::from_entries(cutoff, radius, None, entries)
}
