mod common;

use cl2n::circuit::parse;

#[test]
fn corpus_sizes() {
    assert!(common::valid().len() >= 20);
    assert!(common::invalid().len() >= 15);
}

#[test]
fn valid_files_round_trip() {
    for s in common::valid() {
        let c = parse(&s.text).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        let text = c.serialize();
        assert_eq!(parse(&text).unwrap(), c, "{}", s.name);
        // canonical form is a fixed point
        assert_eq!(parse(&text).unwrap().serialize(), text, "{}", s.name);
        assert!(text.ends_with('\n') && !text.contains('\r') && !text.contains('#'));
    }
}

#[test]
fn invalid_files_report_their_line() {
    for s in common::invalid() {
        let e = parse(&s.text).expect_err(&s.name);
        assert_eq!(e.line, common::expected_line(&s), "{}: {e}", s.name);
        assert!(e.column >= 1, "{}", s.name);
        let line_len = s.text.lines().nth(e.line - 1).map_or(0, |l| l.trim_end_matches('\r').chars().count());
        assert!(e.column <= line_len + 1, "{}: column {} past end of line", s.name, e.column);
    }
}

#[test]
fn crlf_and_lf_agree() {
    for s in common::valid() {
        let lf = s.text.replace("\r\n", "\n");
        let crlf = lf.replace('\n', "\r\n");
        assert_eq!(parse(&lf).unwrap(), parse(&crlf).unwrap(), "{}", s.name);
    }
}

#[test]
fn truncated_inputs_never_panic() {
    for s in common::valid().iter().chain(&common::invalid()) {
        for (i, _) in s.text.char_indices() {
            let _ = parse(&s.text[..i]);
        }
    }
}
