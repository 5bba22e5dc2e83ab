use crate::ingestion::CaseRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TehsilCount {
    pub tehsil: String,
    pub count: usize,
    /// `round(100 · count / total)`, halves rounded up; `None` when the
    /// dataset is empty.
    pub percent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TehsilBreakdown {
    pub total: usize,
    /// One row per tehsil, in order of first appearance.
    pub rows: Vec<TehsilCount>,
}

impl TehsilBreakdown {
    pub fn count_of(&self, tehsil: &str) -> usize {
        self.rows.iter().find(|r| r.tehsil == tehsil).map_or(0, |r| r.count)
    }

    /// Percentage for `tehsil`; 0 for a tehsil with no cases, `None` for an
    /// empty dataset.
    pub fn percent_of(&self, tehsil: &str) -> Option<u32> {
        if self.total == 0 {
            return None;
        }
        Some(self.rows.iter().find(|r| r.tehsil == tehsil).and_then(|r| r.percent).unwrap_or(0))
    }

    /// CSV with header `tehsil,count,percent`.
    pub fn to_csv(&self) -> crate::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["tehsil", "count", "percent"])?;
        for r in &self.rows {
            let percent = r.percent.map_or_else(|| "undefined".to_string(), |p| p.to_string());
            w.write_record([r.tehsil.as_str(), &r.count.to_string(), &percent])?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::InvalidInput(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn tehsil_breakdown(cases: &[CaseRecord]) -> TehsilBreakdown {
    let total = cases.len();
    let mut rows: Vec<TehsilCount> = Vec::new();
    for case in cases {
        match rows.iter_mut().find(|r| r.tehsil == case.tehsil) {
            Some(row) => row.count += 1,
            None => rows.push(TehsilCount {
                tehsil: case.tehsil.clone(),
                count: 1,
                percent: None,
            }),
        }
    }
    for row in &mut rows {
        row.percent = Some(half_up_percent(row.count, total));
    }
    TehsilBreakdown { total, rows }
}

fn half_up_percent(count: usize, total: usize) -> u32 {
    ((200 * count + total) / (2 * total)) as u32
}
