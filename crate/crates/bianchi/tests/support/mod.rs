//! Shared fixtures for the malformed-input tests and the acceptance gate.

use bianchi::catalog;
use bianchi::Error;

/// Crafted malformed inputs paired with fragments the error must contain.
pub const MALFORMED_CASES: [(&str, &str, &[&str]); 11] = [
    (
        "nokind",
        "field 2\ngen x1 deg 1\n",
        &["line 1", "the first directive must be 'kind'"],
    ),
    (
        "badkind",
        "kind banana\nsrc \"x\"\n",
        &["line 1, column 6", "unknown kind 'banana'"],
    ),
    (
        "nodegree",
        "kind algebra\nsrc \"x\"\nfield 2\ngen a deg\n",
        &["line 4, column 8", "expected a degree"],
    ),
    (
        "baddirective",
        "kind algebra\nsrc \"x\"\nfield 2\nfrobnicate 3\n",
        &["line 4, column 1", "unknown directive 'frobnicate'"],
    ),
    (
        "dupgen",
        "kind algebra\nsrc \"x\"\nfield 2\ngen x1 deg 1\ngen x1 deg 2\n",
        &["duplicate generator `x1`"],
    ),
    (
        "inhomogeneous",
        "kind algebra\nsrc \"x\"\nfield 2\ngen x1 deg 1\ngen y2 deg 2\nrel x1 + y2\n",
        &["relation 1", "inhomogeneous relation `x1 + y2`"],
    ),
    (
        "ghostgen",
        "kind algebra\nsrc \"x\"\nfield 2\ngen x1 deg 1\nrel z9^2\n",
        &["relation 1", "unknown generator `z9`"],
    ),
    (
        "nonprime",
        "kind algebra\nsrc \"x\"\nfield 4\ngen x1 deg 1\n",
        &["4 is not prime"],
    ),
    (
        "degreezero",
        "kind algebra\nsrc \"x\"\nfield 2\ngen x0 deg 0\n",
        &["generator `x0` has degree 0"],
    ),
    (
        "degreeshift",
        "kind hom\nsrc \"x\"\nsource D2.mod2\ntarget Z2.mod2\nmap x1 -> x1^2\n",
        &["degree mismatch for `x1`", "expected degree 1"],
    ),
    (
        "ghostdep",
        "kind claim\nsrc \"x\"\nprime 2\ngen y2 deg 2\nmodp nothere.mod2\n",
        &["references missing entry 'nothere.mod2'"],
    ),
];

/// Load the builtin set plus one extra file and demand a located rejection
/// blaming that file.
pub fn rejected_with_located_error(id: &str, text: &str, fragments: &[&str]) {
    let mut files: Vec<(String, String)> = catalog::builtin_sources()
        .iter()
        .map(|&(fid, ftext)| (fid.to_string(), ftext.to_string()))
        .collect();
    files.push((id.to_string(), text.to_string()));
    let err = match catalog::load_from(&files) {
        Err(e) => e,
        Ok(_) => panic!("case {id} was accepted"),
    };
    let Error::EntryInvalid { id: bad, msg } = &err else {
        panic!("case {id} produced an unlocated error: {err}");
    };
    assert_eq!(bad, id, "case {id} blamed the wrong entry");
    for fragment in fragments {
        assert!(msg.contains(fragment), "case {id}: message `{msg}` lacks `{fragment}`");
    }
}
