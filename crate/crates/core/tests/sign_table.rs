use rweyl::signtable::{generate_sign_table, SplitSignTable, TABLE_DIM_CAP, TABLE_MAX_K, TABLE_MAX_RANK};

#[test]
fn shipped_table_matches_regeneration() {
    let shipped = SplitSignTable::default_table().unwrap();
    let fresh = generate_sign_table(TABLE_MAX_RANK, TABLE_DIM_CAP, TABLE_MAX_K).unwrap();
    assert_eq!(fresh.rows, shipped.rows);
    assert_eq!(fresh.to_toml(), shipped.to_toml());
}

#[test]
fn table_text_round_trips() {
    let t = SplitSignTable::default_table().unwrap();
    let again = SplitSignTable::parse(&t.to_toml()).unwrap();
    assert_eq!(again.rows, t.rows);
    assert!(SplitSignTable::parse("schema = 99\nrow = []\n").is_err());
}
