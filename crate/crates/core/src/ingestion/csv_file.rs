use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{check_unique_ids, parse_date, parse_imported, CaseRecord};
use crate::error::{Error, Result};
use crate::geo::GeoPoint;

pub const CSV_HEADER: [&str; 6] = ["id", "lat", "lon", "tehsil", "onset_date", "imported"];

pub fn read_csv(path: &Path) -> Result<Vec<CaseRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv_from(file)
}

/// Parses `id,lat,lon,tehsil,onset_date,imported`. Columns are located by
/// name; extra columns are ignored. Row order is preserved.
pub fn read_csv_from<R: Read>(reader: R) -> Result<Vec<CaseRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut cols = [0usize; 6];
    for (slot, name) in cols.iter_mut().zip(CSV_HEADER) {
        *slot = headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Schema(name.to_string()))?;
    }
    let [c_id, c_lat, c_lon, c_tehsil, c_date, c_imported] = cols;

    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |c: usize| row.get(c).unwrap_or("");
        let row_err = |message: String| Error::Row { line, message };

        let lat: f64 = field(c_lat)
            .trim()
            .parse()
            .map_err(|_| row_err(format!("unparsable lat `{}`", field(c_lat))))?;
        let lon: f64 = field(c_lon)
            .trim()
            .parse()
            .map_err(|_| row_err(format!("unparsable lon `{}`", field(c_lon))))?;
        let location = GeoPoint::new(lat, lon).map_err(|e| row_err(e.to_string()))?;
        let onset_date =
            parse_date(field(c_date)).map_err(|e| row_err(format!("bad onset_date `{}`: {e}", field(c_date))))?;
        let imported = parse_imported(field(c_imported))
            .ok_or_else(|| row_err(format!("imported must be true/false/1/0, got `{}`", field(c_imported))))?;
        records.push(CaseRecord {
            id: field(c_id).to_string(),
            location,
            tehsil: field(c_tehsil).to_string(),
            onset_date,
            imported,
        });
    }
    check_unique_ids(&records)?;
    Ok(records)
}

pub fn write_csv(records: &[CaseRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv_to(records, file)
}

pub fn write_csv_to<W: Write>(records: &[CaseRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let date = r.onset_date.map(|d| d.format("%Y-%m-%d").to_string()).unwrap_or_default();
        w.write_record([
            r.id.as_str(),
            &r.location.lat().to_string(),
            &r.location.lon().to_string(),
            r.tehsil.as_str(),
            &date,
            if r.imported { "true" } else { "false" },
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}
