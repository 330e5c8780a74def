//! Text rendering with 17 significant digits, enough to round-trip any `f64`.

use bures_geom::linalg::CMatrix;

/// A finite number with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return format!("{x:.1}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..17).contains(&e) {
        format!("{:.*}", (16 - e) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

/// CSV cell: like [`num`] but spells non-finite values out.
pub fn cell(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        format!("{x}")
    }
}

pub fn complex(re: f64, im: f64) -> String {
    format!("{{\"re\":{},\"im\":{}}}", num(re), num(im))
}

fn rows(m: &CMatrix, part: impl Fn(usize, usize) -> f64) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let row: Vec<String> = (0..m.ncols()).map(|j| num(part(i, j))).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Matrix JSON `{"d","re","im"}`; `im` is omitted for real matrices.
pub fn matrix(m: &CMatrix) -> String {
    let re = rows(m, |i, j| m[(i, j)].re);
    if m.iter().all(|z| z.im == 0.0) {
        format!("{{\"d\":{},\"re\":{re}}}", m.nrows())
    } else {
        let im = rows(m, |i, j| m[(i, j)].im);
        format!("{{\"d\":{},\"re\":{re},\"im\":{im}}}", m.nrows())
    }
}

/// JSON object from already-rendered values.
pub fn object(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
    format!("{{{}}}", body.join(","))
}

pub fn string(s: &str) -> String {
    let escaped: String = s
        .chars()
        .flat_map(|c| match c {
            '"' => vec!['\\', '"'],
            '\\' => vec!['\\', '\\'],
            c if (c as u32) < 0x20 => format!("\\u{:04x}", c as u32).chars().collect(),
            c => vec![c],
        })
        .collect();
    format!("\"{escaped}\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.9330127018922193, 1.0 / 3.0, -2.5e-9, 6.02e23, 1e-300, 123456.789, 0.1] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let digits = s
                .split(['e', 'E'])
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .collect::<String>();
            assert!(digits.trim_start_matches('0').len() >= 17, "{s}");
        }
    }

    #[test]
    fn special_values() {
        assert_eq!(num(0.0), "0.0");
        assert_eq!(num(f64::NAN), "null");
        assert_eq!(cell(f64::INFINITY), "inf");
        assert_eq!(complex(1.0, 0.0), "{\"re\":1.0000000000000000,\"im\":0.0}");
    }

    #[test]
    fn matrix_json_parses_back() {
        let m = bures_geom::linalg::parse_matrix(
            r#"{"d":2,"re":[[0.1,0.3333333333333333],[0.3333333333333333,2e-7]],"im":[[0,-0.7],[0.7,0]]}"#,
        )
        .unwrap();
        let back = bures_geom::linalg::parse_matrix(&matrix(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn strings_are_escaped() {
        assert_eq!(string("a\"b\\c\n"), "\"a\\\"b\\\\c\\u000a\"");
    }
}
