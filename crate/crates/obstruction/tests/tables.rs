use std::path::Path;

use obstruction::em_space::{k_table, EMTable, TABULATED};
use obstruction::group_rings::{build_ring, read_table, write_table, Coefficients, RingKind};
use obstruction::report::Verdict;
use obstruction::suites::{check_tables, write_tables};

const KINDS: [RingKind; 4] = [RingKind::BS1, RingKind::BHt, RingKind::BGt, RingKind::BDt];

#[test]
fn ring_tables_round_trip_bit_exactly() {
    for p in [3u32, 5, 7] {
        for kind in KINDS {
            for coeffs in [Coefficients::Integral, Coefficients::ModP] {
                let ring = build_ring(kind, p, coeffs);
                let text = write_table(&ring);
                let back = read_table(&text).unwrap();
                assert_eq!(back, ring, "{kind:?} p={p} {coeffs:?}");
                assert_eq!(write_table(&back), text);
            }
        }
    }
}

#[test]
fn em_tables_round_trip_bit_exactly() {
    for p in [3u32, 5, 7] {
        for (space, coeffs) in TABULATED {
            let t = k_table(space, p, coeffs).unwrap();
            let back = EMTable::from_text(&t.to_text()).unwrap();
            assert_eq!(back, t);
            assert_eq!(back.to_text(), t.to_text());
        }
    }
}

#[test]
fn malformed_lines_are_rejected() {
    let text = write_table(&build_ring(RingKind::BS1, 3, Coefficients::Integral));
    assert!(read_table(&text.replacen("# ring", "# rung", 1)).is_err());
    let broken = format!("{text}4 | tau * -> tau^2\n");
    assert!(read_table(&broken).is_err());
}

#[test]
fn shipped_data_matches_the_builders() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let checks = check_tables(&dir, &[3, 5, 7]);
    assert_eq!(checks.len(), 33);
    for c in &checks {
        assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
    }
}

#[test]
fn written_tables_check_clean_and_missing_files_fail() {
    let dir = std::env::temp_dir().join(format!("obstruction-tables-{}", std::process::id()));
    let written = write_tables(&dir, &[5]).unwrap();
    assert_eq!(written.len(), 11);
    assert!(check_tables(&dir, &[5]).iter().all(|c| c.verdict == Verdict::Pass));
    std::fs::remove_file(&written[0]).unwrap();
    let after = check_tables(&dir, &[5]);
    assert_eq!(after.iter().filter(|c| c.verdict == Verdict::Fail).count(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
