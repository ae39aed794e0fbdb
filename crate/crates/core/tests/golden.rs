//! Regenerated tables against the committed goldens. Set `BRAUER_BLESS=1`
//! to rewrite them.

use std::path::PathBuf;

use brauer_core::enumeration::{render_tsv, reproduce_table, TableId};

fn golden_ids() -> Vec<TableId> {
    let mut ids = vec![TableId::SsCatalog, TableId::SquareCounts];
    ids.extend([2, 3, 5, 7, 11].map(TableId::PrimeField));
    ids.extend((1..=6).map(TableId::OmegaCatalog));
    ids
}

fn file_name(id: TableId) -> String {
    id.to_string().replace('(', "-").replace(')', "") + ".tsv"
}

#[test]
fn tables_match_goldens() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/v1");
    let bless = std::env::var_os("BRAUER_BLESS").is_some();
    let mut stale = Vec::new();
    for id in golden_ids() {
        let text = render_tsv(&reproduce_table(id).unwrap());
        // regeneration is deterministic
        assert_eq!(text, render_tsv(&reproduce_table(id).unwrap()));
        let path = dir.join(file_name(id));
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(g) if g == text => {}
            _ => stale.push(path.display().to_string()),
        }
    }
    assert!(stale.is_empty(), "goldens differ: {stale:?}");
}
