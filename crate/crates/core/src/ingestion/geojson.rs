use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{check_unique_ids, parse_date, CaseRecord};
use crate::clustering::Label;
use crate::error::{Error, Result};
use crate::geo::GeoPoint;

/// Serialises records as an RFC 7946 FeatureCollection of Points.
///
/// Properties are `id`, `tehsil`, `imported` and `onset_date` (string or
/// null). When `labels` is given each feature also carries `cluster`: the
/// integer cluster id, or the string `"noise"`.
pub fn to_geojson_string(records: &[CaseRecord], labels: Option<&[Label]>) -> Result<String> {
    if let Some(labels) = labels {
        if labels.len() != records.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} records",
                labels.len(),
                records.len()
            )));
        }
    }
    let features: Vec<Value> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut props = Map::new();
            props.insert("id".into(), json!(r.id));
            props.insert("tehsil".into(), json!(r.tehsil));
            props.insert("imported".into(), json!(r.imported));
            props.insert(
                "onset_date".into(),
                r.onset_date.map_or(Value::Null, |d| json!(d.format("%Y-%m-%d").to_string())),
            );
            if let Some(labels) = labels {
                let cluster = match labels[i] {
                    Label::Cluster(c) => json!(c),
                    Label::Noise => json!("noise"),
                };
                props.insert("cluster".into(), cluster);
            }
            json!({
                "type": "Feature",
                "geometry": {
                    "type": "Point",
                    "coordinates": [r.location.lon(), r.location.lat()],
                },
                "properties": props,
            })
        })
        .collect();
    let fc = json!({ "type": "FeatureCollection", "features": features });
    let mut text = serde_json::to_string_pretty(&fc)?;
    text.push('\n');
    Ok(text)
}

pub fn write_geojson(records: &[CaseRecord], labels: Option<&[Label]>, path: &Path) -> Result<()> {
    let text = to_geojson_string(records, labels)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_geojson(path: &Path) -> Result<Vec<CaseRecord>> {
    Ok(read_geojson_labeled(path)?.0)
}

/// Reads records and, if every feature carries a `cluster` property, the
/// cluster labels as well.
pub fn read_geojson_labeled(path: &Path) -> Result<(Vec<CaseRecord>, Option<Vec<Label>>)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_geojson_str(&text)
}

pub fn read_geojson_str(text: &str) -> Result<(Vec<CaseRecord>, Option<Vec<Label>>)> {
    let root: Value = serde_json::from_str(text)?;
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(Error::Schema("type: FeatureCollection".into()));
    }
    let features = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("features".into()))?;

    let mut records = Vec::with_capacity(features.len());
    let mut labels = Vec::with_capacity(features.len());
    for (i, feature) in features.iter().enumerate() {
        let geometry = feature.get("geometry").ok_or_else(|| Error::Schema("geometry".into()))?;
        let kind = geometry.get("type").and_then(Value::as_str).unwrap_or("<missing>");
        if kind != "Point" {
            return Err(Error::UnsupportedGeometry(kind.to_string()));
        }
        let coords = geometry
            .get("coordinates")
            .and_then(Value::as_array)
            .filter(|c| c.len() >= 2)
            .ok_or_else(|| Error::Schema("geometry.coordinates".into()))?;
        let (lon, lat) = match (coords[0].as_f64(), coords[1].as_f64()) {
            (Some(lon), Some(lat)) => (lon, lat),
            _ => return Err(Error::Schema("geometry.coordinates".into())),
        };
        let location =
            GeoPoint::new(lat, lon).map_err(|e| Error::InvalidInput(format!("feature {i}: {e}")))?;

        let props = feature
            .get("properties")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Schema("properties".into()))?;
        let string_prop = |name: &str| {
            props
                .get(name)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| Error::Schema(name.to_string()))
        };
        let id = string_prop("id")?;
        let tehsil = string_prop("tehsil")?;
        let imported = props
            .get("imported")
            .and_then(Value::as_bool)
            .ok_or_else(|| Error::Schema("imported".into()))?;
        let onset_date = match props.get("onset_date") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => {
                parse_date(s).map_err(|e| Error::InvalidInput(format!("feature {i}: bad onset_date `{s}`: {e}")))?
            }
            Some(_) => return Err(Error::Schema("onset_date".into())),
        };
        labels.push(match props.get("cluster") {
            None => None,
            Some(Value::String(s)) if s == "noise" => Some(Label::Noise),
            Some(v) => Some(Label::Cluster(
                v.as_u64().ok_or_else(|| Error::Schema("cluster".into()))? as usize,
            )),
        });
        records.push(CaseRecord {
            id,
            location,
            tehsil,
            onset_date,
            imported,
        });
    }
    check_unique_ids(&records)?;
    let labels = labels.into_iter().collect::<Option<Vec<_>>>().filter(|l| !l.is_empty());
    Ok((records, labels))
}
