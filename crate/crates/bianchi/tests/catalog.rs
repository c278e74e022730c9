use bianchi::catalog::{self, Entry};
use bianchi::Error;

#[test]
fn builtin_catalog_loads() {
    let cat = catalog::builtin().expect("builtin catalog must load");
    assert!(cat.len() >= 30, "expected a full catalog, got {}", cat.len());
    let mut algebras = 0usize;
    let mut homs = 0usize;
    let mut derivations = 0usize;
    let mut claims = 0usize;
    let mut towers = 0usize;
    let mut groups = 0usize;
    for id in cat.ids() {
        match &cat.get(id).unwrap().entry {
            Entry::Algebra(_) => algebras += 1,
            Entry::Hom(_) => homs += 1,
            Entry::Derivation(_) => derivations += 1,
            Entry::Claim(_) => claims += 1,
            Entry::Tower(_) => towers += 1,
            Entry::Group(_) => groups += 1,
        }
    }
    assert!(algebras >= 30, "algebras: {algebras}");
    assert!(homs >= 10, "homs: {homs}");
    assert!(derivations >= 15, "derivations: {derivations}");
    assert!(claims >= 45, "claims: {claims}");
    assert!(towers >= 18, "towers: {towers}");
    assert!(groups >= 1, "groups: {groups}");
}

#[test]
fn round_trip_is_identity_on_every_builtin_entry() {
    for (id, text) in catalog::builtin_sources() {
        let first = catalog::parse_entry(id, text)
            .unwrap_or_else(|e| panic!("{id}: {e}"));
        let printed = catalog::print_entry(&first);
        let second = catalog::parse_entry(id, &printed)
            .unwrap_or_else(|e| panic!("{id} reprint: {e}\n{printed}"));
        assert_eq!(first, second, "{id} round trip changed the entry");
    }
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let bad = "kind algebra\nsrc \"x\"\nfield 2\ngen a deg\n";
    match catalog::parse_entry("bad", bad) {
        Err(Error::Syntax { line, col, .. }) => {
            assert_eq!(line, 4);
            assert!(col > 1);
        }
        other => panic!("expected a located syntax error, got {other:?}"),
    }
}

#[test]
fn missing_dependency_is_reported() {
    let files = vec![(
        "lonely.sq1".to_string(),
        "kind derivation\nsrc \"test\"\non nowhere.mod2\n".to_string(),
    )];
    match catalog::load_from(&files) {
        Err(Error::EntryInvalid { id, msg }) => {
            assert_eq!(id, "lonely.sq1");
            assert!(msg.contains("nowhere.mod2"), "{msg}");
        }
        Err(other) => panic!("expected a missing-dependency error, got {other:?}"),
        Ok(_) => panic!("expected a missing-dependency error, got a catalog"),
    }
}
