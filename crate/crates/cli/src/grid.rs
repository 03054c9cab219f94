//! Parsing for value-list specs: `5`, `7,8`, `1..6`, or combinations like
//! `1..3,6` (ranges are inclusive).

pub fn parse_list(spec: &str) -> Result<Vec<u64>, String> {
    let mut values = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(format!("empty entry in list {spec:?}"));
        }
        if let Some((lo, hi)) = token.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start {token:?}"))?;
            let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range end {token:?}"))?;
            if lo > hi {
                return Err(format!("descending range {token:?}"));
            }
            values.extend(lo..=hi);
        } else {
            values.push(token.parse().map_err(|_| format!("bad value {token:?}"))?);
        }
    }
    values.sort_unstable();
    values.dedup();
    Ok(values)
}
