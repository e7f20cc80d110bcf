//! Malformed-input corpus shared by the fuzz suite and the acceptance run.

pub const HEADER: &str = "model,benchmark,dimension,instance,score\n";

pub fn valid_csv() -> String {
    let mut s = String::from(HEADER);
    for m in 0..4 {
        for q in 0..6 {
            let dim = if q < 3 { "ocr" } else { "count" };
            s.push_str(&format!(
                "m{m},B,{dim},q{q},{}\n",
                ((m * 5 + q * 3) % 7) as f64 / 6.0
            ));
        }
    }
    s
}

/// `(file name, contents, expected fragment of the located diagnostic)`.
pub fn malformed_cases() -> Vec<(&'static str, String, &'static str)> {
    let v = valid_csv();
    vec![
        ("empty.csv", String::new(), "line 1"),
        ("header_only_bad.csv", "a,b,c\n".into(), "line 1"),
        ("short_row.csv", format!("{HEADER}m1,B,ocr,q1\n"), "line 2"),
        ("long_row.csv", format!("{HEADER}m1,B,ocr,q1,0.5,extra\n"), "line 2"),
        ("text_score.csv", format!("{HEADER}m1,B,ocr,q1,high\n"), "line 2"),
        ("empty_score.csv", format!("{HEADER}m1,B,ocr,q1,\n"), "line 2"),
        ("bad_id.csv", format!("{HEADER}m 1,B,ocr,q1,0.5\n"), "line 2"),
        ("high.csv", format!("{HEADER}m1,B,ocr,q1,0.5\nm1,B,ocr,q2,1.5\n"), "line 3"),
        ("negative.csv", format!("{HEADER}m1,B,ocr,q1,-0.1\n"), "line 2"),
        ("nan.csv", format!("{HEADER}m1,B,ocr,q1,NaN\n"), "line 2"),
        ("inf.csv", format!("{HEADER}m1,B,ocr,q1,inf\n"), "line 2"),
        ("dup.csv", format!("{HEADER}m1,B,ocr,q1,1.0\nm1,B,ocr,q2,0\nm1,B,ocr,q1,0.0\n"), "line 4"),
        ("conflict.csv", format!("{HEADER}m1,B,ocr,q1,1.0\nm2,B,count,q1,0.0\n"), "line 3"),
        ("late_error.csv", format!("{v}m9,B,ocr,q0,2\n"), "line 26"),
        ("syntax.json", "[{\"model\": \"m1\",".into(), "line 1, column"),
        ("not_array.json", "{\"model\": \"m1\"}".into(), "line 1"),
        ("missing_field.json", r#"[{"model":"m1","benchmark":"B","instance":"q1","score":1}]"#.into(), "record 0"),
        ("string_score.json", r#"[{"model":"m1","benchmark":"B","dimension":"d","instance":"q1","score":"1"}]"#.into(), "record 0"),
        (
            "range.json",
            r#"[{"model":"m1","benchmark":"B","dimension":"d","instance":"q1","score":1},
               {"model":"m1","benchmark":"B","dimension":"d","instance":"q2","score":7}]"#
                .into(),
            "record 1",
        ),
        (
            "dup.json",
            r#"[{"model":"m1","benchmark":"B","dimension":"d","instance":"q1","score":1},
               {"model":"m1","benchmark":"B","dimension":"d","instance":"q1","score":0}]"#
                .into(),
            "record 1",
        ),
        (
            "disjoint.csv",
            format!("{HEADER}m1,B,ocr,q1,1\nm1,B,ocr,q2,0\nm2,B,ocr,q3,1\nm2,B,ocr,q4,0\nm3,B,ocr,q5,1\n"),
            "benchmark 'B'",
        ),
    ]
}

pub fn has_error_line(stderr: &str, name: &str) -> bool {
    stderr
        .lines()
        .any(|l| l.starts_with(&format!("error: {name}: ")))
}
