//! Round-trip properties of the document format over grammar-valid labels.

use finconv_core::bitmat::BitMatrix;
use finconv_core::carrier::Carrier;
use finconv_core::spaces::{PseudoSpace, SpaceMap};
use finconv_harness::doc::{Document, Item};
use proptest::prelude::*;

/// Labels drawn from the grammar's word alphabet (no reserved characters,
/// no whitespace, no `->`), made unique by an index suffix.
fn label_strategy() -> impl Strategy<Value = String> {
    "[a-z(][a-z0-9_,()\\[\\]']{0,4}"
        .prop_map(|s| s)
}

prop_compose! {
    fn doc_strategy()(
        n in 1..=5usize,
        m in 1..=4usize,
        stems in prop::collection::vec(label_strategy(), 9),
        bits in prop::collection::vec(any::<bool>(), 25),
        targets in prop::collection::vec(0..4usize, 5),
    ) -> Document {
        let dom_labels: Vec<String> =
            (0..n).map(|i| format!("{}{i}", stems[i])).collect();
        let cod_labels: Vec<String> =
            (0..m).map(|i| format!("{}x{i}", stems[n + i])).collect();
        let mut conv = BitMatrix::identity(n);
        let mut k = 0;
        for a in 0..n {
            for x in 0..n {
                if a != x {
                    if bits[k] {
                        conv.set(a, x, true);
                    }
                    k += 1;
                }
            }
        }
        let dom = PseudoSpace::from_relation(
            Carrier::new(dom_labels).expect("suffixed labels are unique"),
            conv,
        );
        let cod = PseudoSpace::discrete(
            Carrier::new(cod_labels).expect("suffixed labels are unique"),
        );
        let assignment: Vec<usize> = (0..n).map(|i| targets[i] % m).collect();
        let map = SpaceMap::from_indices(dom.clone(), cod.clone(), assignment)
            .expect("assignment in range");
        let mut doc = Document::new();
        doc.push("X", Item::Space(dom)).expect("fresh name");
        doc.push("Y", Item::Space(cod)).expect("fresh name");
        doc.push(
            "f",
            Item::Map { dom_name: "X".into(), cod_name: "Y".into(), map },
        )
        .expect("fresh name");
        doc
    }
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(doc in doc_strategy()) {
        let text = doc.serialize();
        let reparsed = Document::parse(&text)
            .unwrap_or_else(|e| panic!("canonical text failed to parse: {e}\n{text}"));
        prop_assert_eq!(&reparsed, &doc);
        // Serialization is a normal form: parsing and re-serializing is stable.
        prop_assert_eq!(reparsed.serialize(), text);
    }
}
