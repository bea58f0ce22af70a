//! Resampling of raw latitude/longitude grids onto the transform grid.
//!
//! Two raw layouts are accepted:
//!
//! - CSV rows `lat_deg,lon_deg,value` covering a full rectangular grid,
//!   grouped by latitude (strictly monotone between groups) with the same
//!   strictly increasing longitudes in every group. A non-numeric first line
//!   is treated as a column header.
//! - Dense: a first line `rows cols`, then `rows` lines of `cols` values.
//!   Cells are centred, so row `i` sits at latitude `90 - (i + 1/2)·180/rows`
//!   and column `j` at longitude `(j + 1/2)·360/cols`.
//!
//! Interpolation is bilinear in (latitude, longitude). Longitude wraps around;
//! latitudes beyond the outermost raw rows take the value of that row.

use so3ft_core::transforms::{make_grid, S2Samples};

use crate::formats::FormatError;

/// Raw grid with ascending latitudes and ascending longitudes in `[0, 360)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawGrid {
    lats: Vec<f64>,
    lons: Vec<f64>,
    // lat-major
    values: Vec<f64>,
}

impl RawGrid {
    pub fn new(lats: Vec<f64>, lons: Vec<f64>, values: Vec<f64>) -> Result<Self, FormatError> {
        let err = |m: &str| FormatError::Parse {
            line: 0,
            message: m.to_string(),
        };
        if lats.is_empty() || lons.is_empty() || values.len() != lats.len() * lons.len() {
            return Err(err("grid is not rectangular"));
        }
        if values.iter().chain(&lats).chain(&lons).any(|v| !v.is_finite()) {
            return Err(err("grid contains non-finite values"));
        }
        if lats.iter().any(|l| l.abs() > 90.0) {
            return Err(err("latitude outside [-90, 90]"));
        }
        let mut grid = RawGrid { lats, lons, values };
        grid.canonicalize().map_err(err)?;
        Ok(grid)
    }

    pub fn lats(&self) -> &[f64] {
        &self.lats
    }

    pub fn lons(&self) -> &[f64] {
        &self.lons
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.lons.len() + j]
    }

    fn canonicalize(&mut self) -> Result<(), &'static str> {
        let (nlat, nlon) = (self.lats.len(), self.lons.len());
        if !strictly_monotone(&self.lats) {
            return Err("latitudes are not strictly monotone");
        }
        if !self.lons.windows(2).all(|w| w[0] < w[1]) {
            return Err("longitudes are not strictly increasing");
        }
        let mut lat_order: Vec<usize> = (0..nlat).collect();
        if nlat > 1 && self.lats[0] > self.lats[1] {
            lat_order.reverse();
        }
        let wrapped: Vec<f64> = self.lons.iter().map(|l| l.rem_euclid(360.0)).collect();
        let mut lon_order: Vec<usize> = (0..nlon).collect();
        lon_order.sort_by(|&a, &b| wrapped[a].total_cmp(&wrapped[b]));
        if lon_order.windows(2).any(|w| wrapped[w[0]] == wrapped[w[1]]) {
            return Err("longitudes repeat modulo 360");
        }
        let values = lat_order
            .iter()
            .flat_map(|&i| lon_order.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.values[i * nlon + j])
            .collect();
        self.lats = lat_order.iter().map(|&i| self.lats[i]).collect();
        self.lons = lon_order.iter().map(|&j| wrapped[j]).collect();
        self.values = values;
        Ok(())
    }

    /// Bilinear value at a latitude and longitude in degrees.
    pub fn interpolate(&self, lat: f64, lon: f64) -> f64 {
        let (i0, i1, s) = lat_bracket(&self.lats, lat);
        let (j0, j1, t) = lon_bracket(&self.lons, lon.rem_euclid(360.0));
        let row = |i: usize| (1.0 - t) * self.value(i, j0) + t * self.value(i, j1);
        (1.0 - s) * row(i0) + s * row(i1)
    }
}

fn strictly_monotone(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1]) || v.windows(2).all(|w| w[0] > w[1])
}

fn lat_bracket(lats: &[f64], lat: f64) -> (usize, usize, f64) {
    let last = lats.len() - 1;
    if lat <= lats[0] {
        return (0, 0, 0.0);
    }
    if lat >= lats[last] {
        return (last, last, 0.0);
    }
    let i = lats.partition_point(|&x| x <= lat) - 1;
    (i, i + 1, (lat - lats[i]) / (lats[i + 1] - lats[i]))
}

fn lon_bracket(lons: &[f64], lon: f64) -> (usize, usize, f64) {
    let last = lons.len() - 1;
    if lons.len() == 1 {
        return (0, 0, 0.0);
    }
    if lon < lons[0] || lon >= lons[last] {
        // segment from the last column across 360 to the first
        let span = lons[0] + 360.0 - lons[last];
        let offset = (lon - lons[last]).rem_euclid(360.0);
        return (last, 0, offset / span);
    }
    let j = lons.partition_point(|&x| x <= lon) - 1;
    (j, j + 1, (lon - lons[j]) / (lons[j + 1] - lons[j]))
}

fn numbers(line: usize, text: &str) -> Result<Vec<f64>, FormatError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>().map_err(|_| FormatError::Parse {
                line,
                message: format!("invalid number `{t}`"),
            })
        })
        .collect()
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses either raw layout. A first line of exactly two non-negative
/// integers selects the dense layout.
pub fn parse_raw(text: &str) -> Result<RawGrid, FormatError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let (first_line, first) = *lines.first().ok_or_else(|| at(1, "empty file"))?;
    let dims: Vec<&str> = first.split_whitespace().collect();
    let dense = dims.len() == 2 && dims.iter().all(|t| t.parse::<usize>().is_ok()) && !first.contains(',');
    let grid = if dense {
        let rows: usize = dims[0].parse().unwrap();
        let cols: usize = dims[1].parse().unwrap();
        if rows == 0 || cols == 0 {
            return Err(at(first_line, "dense grid needs at least one row and column"));
        }
        if lines.len() - 1 != rows {
            return Err(at(first_line, format!("expected {rows} rows, found {}", lines.len() - 1)));
        }
        let mut values = Vec::with_capacity(rows * cols);
        for &(n, text) in &lines[1..] {
            let row = numbers(n, text)?;
            if row.len() != cols {
                return Err(at(n, format!("expected {cols} values, found {}", row.len())));
            }
            values.extend(row);
        }
        let lats = (0..rows).map(|i| 90.0 - (i as f64 + 0.5) * 180.0 / rows as f64).collect();
        let lons = (0..cols).map(|j| (j as f64 + 0.5) * 360.0 / cols as f64).collect();
        RawGrid::new(lats, lons, values)
    } else {
        let mut rows = Vec::new();
        for (k, &(n, text)) in lines.iter().enumerate() {
            match numbers(n, text) {
                Ok(v) if v.len() == 3 => rows.push((n, v)),
                Ok(v) => return Err(at(n, format!("expected 3 fields, found {}", v.len()))),
                Err(_) if k == 0 => continue,
                Err(e) => return Err(e),
            }
        }
        csv_grid(&rows)
    };
    grid.map_err(|e| match e {
        FormatError::Parse { line: 0, message } => at(first_line, message),
        other => other,
    })
}

fn csv_grid(rows: &[(usize, Vec<f64>)]) -> Result<RawGrid, FormatError> {
    let (first_line, first) = rows.first().ok_or_else(|| at(1, "no data rows"))?;
    let nlon = rows.iter().take_while(|(_, r)| r[0] == first[0]).count();
    if !rows.len().is_multiple_of(nlon) {
        return Err(at(*first_line, "rows do not form a rectangular grid"));
    }
    let lons: Vec<f64> = rows[..nlon].iter().map(|(_, r)| r[1]).collect();
    let mut lats = Vec::new();
    for block in rows.chunks(nlon) {
        let lat = block[0].1[0];
        for (k, (n, r)) in block.iter().enumerate() {
            if r[0] != lat {
                return Err(at(*n, "latitude group has the wrong number of rows"));
            }
            if r[1] != lons[k] {
                return Err(at(*n, "longitudes differ from the first latitude group"));
            }
        }
        lats.push(lat);
    }
    let values = rows.iter().map(|(_, r)| r[2]).collect();
    RawGrid::new(lats, lons, values)
}

/// Samples `raw` at the grid nodes `(β_k, πj/B)`.
pub fn resample(raw: &RawGrid, bandwidth: usize) -> so3ft_core::Result<S2Samples<f64>> {
    let grid = make_grid(bandwidth)?;
    Ok(S2Samples::from_fn(&grid, |theta, phi| {
        raw.interpolate(90.0 - theta.to_degrees(), phi.to_degrees())
    }))
}

/// Subtracts the spherical mean (by quadrature) and scales to unit max-abs.
///
/// A field whose residue is rounding noise (below `1e-12` of its original
/// magnitude) is treated as constant and maps to zero.
pub fn normalize(samples: &S2Samples<f64>) -> S2Samples<f64> {
    let b = samples.bandwidth();
    let grid = make_grid(b).expect("sample sets have B >= 1");
    let size = samples.size();
    let mut mean = 0.0;
    for k in 0..size {
        let row: f64 = (0..size).map(|j| samples.get(k, j)).sum();
        mean += grid.weights()[k] * row;
    }
    mean *= 2.0 * b as f64;
    let centred: Vec<f64> = samples.as_slice().iter().map(|v| v - mean).collect();
    let peak = centred.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let magnitude = samples.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if peak > 1e-12 * magnitude { 1.0 / peak } else { 0.0 };
    S2Samples::new(b, centred.into_iter().map(|v| v * scale).collect()).expect("same shape")
}

/// Parse, resample and optionally normalize.
pub fn ingest(text: &str, bandwidth: usize, normalized: bool) -> anyhow::Result<S2Samples<f64>> {
    let raw = parse_raw(text)?;
    let samples = resample(&raw, bandwidth)?;
    Ok(if normalized { normalize(&samples) } else { samples })
}
