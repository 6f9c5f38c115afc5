use adesign::formats::*;
use adesign_core::pbd::PbdInstance;
use adesign_core::search::CubeAssignment;
use adesign_core::sidon::greedy_bsequence;
use adesign_core::BlockFamily;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = BlockFamily> {
    (2u32..8)
        .prop_flat_map(|v| (Just(v), 1..v))
        .prop_flat_map(|(v, k)| {
            let block = proptest::sample::subsequence((1..=v).collect::<Vec<u32>>(), k as usize);
            (
                Just(v),
                Just(k),
                proptest::collection::vec((block, 0u64..1000), 0..12),
            )
        })
        .prop_map(|(v, k, entries)| {
            let mut f = BlockFamily::new(v, k).unwrap();
            for (b, m) in entries {
                f.add_points(&b, m).unwrap();
            }
            f
        })
}

proptest! {
    #[test]
    fn family_round_trip(f in family()) {
        let text = write_family(&f);
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(write_family(&back), text);
    }

    #[test]
    fn family_parse_ignores_comments_and_blanks(f in family(), junk in "[ a-z]{0,10}") {
        let text = write_family(&f);
        let noisy: String = text
            .lines()
            .flat_map(|l| [format!("#{junk}"), String::new(), format!("  {l}  ")])
            .collect::<Vec<_>>()
            .join("\n");
        prop_assert_eq!(parse_family(&noisy).unwrap(), f);
    }

    #[test]
    fn frequency_lines_match_subsets(f in family(), t in 1u32..3) {
        prop_assume!(t <= f.k());
        let table = f.frequencies(t).unwrap();
        let text = write_frequencies(&table);
        prop_assert_eq!(text.lines().count(), table.values().len());
        for (line, (subset, freq)) in text.lines().zip(table.iter()) {
            let (pts, fr) = line.split_once(" : ").unwrap();
            let pts: Vec<u32> = pts.split(' ').map(|x| x.parse().unwrap()).collect();
            prop_assert_eq!(pts, subset);
            prop_assert_eq!(fr.parse::<u64>().unwrap(), freq);
        }
    }

    #[test]
    fn cube_round_trip(n in 1usize..4, seed in any::<u64>()) {
        let cells: Vec<u64> = (0..n * n * n).map(|i| (seed >> (i % 64)) % 7 + (1u64 << (2 * i))).collect();
        if let Ok(cube) = CubeAssignment::new(n, cells) {
            prop_assert_eq!(parse_cube(&write_cube(&cube)).unwrap(), cube);
        }
    }
}

#[test]
fn block_family_layout() {
    let mut f = BlockFamily::new(5, 2).unwrap();
    f.add_points(&[2, 5], 3).unwrap();
    f.add_points(&[1, 4], 1).unwrap();
    assert_eq!(write_family(&f), "blockfamily v=5 k=2\n1 : 1 4\n3 : 2 5\n");
}

#[test]
fn sidon_and_pbd_layouts() {
    let s = greedy_bsequence(3, 4).unwrap();
    assert_eq!(
        write_sidon(&s),
        format!(
            "sidon r=3\n{}\n",
            s.elements()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        )
    );
    assert_eq!(parse_sidon(&write_sidon(&s)).unwrap(), s);
    let p = PbdInstance::new(3, vec![vec![1, 2, 3]]).unwrap();
    assert_eq!(write_pbd(&p), "pbd v=3\n1 2 3\n");
    assert!(parse_pbd("pbd v=3\n3 2\n").is_err());
    assert!(parse_pbd("blockfamily v=3 k=2\n").is_err());
}

#[test]
fn certificate_requires_trailer() {
    assert!(parse_certificate("blockfamily v=3 k=2\n1 : 1 2\n").is_err());
    let (f, tr) =
        parse_certificate("blockfamily v=3 k=2\n1 : 1 2\n# mu=1 optimal=false nodes=4\n").unwrap();
    assert_eq!(f.total_blocks().unwrap(), 1);
    assert_eq!((tr.mu, tr.optimal, tr.nodes), (1, false, 4));
    assert!(parse_certificate("blockfamily v=3 k=2\n# mu=1 optimal=maybe nodes=4\n").is_err());
}
