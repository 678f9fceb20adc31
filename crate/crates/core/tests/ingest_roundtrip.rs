mod common;

use chrono::NaiveDate;
use common::*;
use proptest::prelude::*;
use wq_core::harmonic::{fit_harmonic_scale, harmonic_curve, HarmonicSpec, IndexMap};
use wq_core::ingest::{parse_csv, render_svg, Dataset, Layer, PlotSpec, GROPENI_CSV};
use wq_core::model::{build_series, Parameter, Sample};
use wq_core::spline::{dense_grid, fit_natural_spline};

#[test]
fn fixture_cell_for_cell() {
    let ds = Dataset::gropeni();
    let codes: Vec<&str> = ds.parameters().iter().map(|p| p.code()).collect();
    assert_eq!(codes, ["temp", "pH", "OD", "CBO5", "CCO-Mn", "CCO-Cr"]);
    let od: Vec<f64> = ds.rows().iter().map(|r| r.values[2].unwrap()).collect();
    assert_eq!(od, GROPENI_OD.to_vec());
    let temp: Vec<Option<f64>> = ds.rows().iter().map(|r| r.values[0]).collect();
    assert_eq!(temp, GROPENI_TEMP.to_vec());
    assert_eq!(
        ds.rows()[4].values,
        vec![
            Some(3.0),
            Some(7.2),
            Some(8.3),
            Some(14.0),
            Some(24.0),
            Some(45.0)
        ]
    );
    assert_eq!(ds.missing_count(), 3);
}

#[test]
fn fixture_round_trip() {
    let ds = Dataset::gropeni();
    let again = parse_csv(&ds.to_csv(), ds.station(), ds.source()).unwrap();
    assert_eq!(again, ds);
}

#[test]
fn data_file_matches_embedded_fixture() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/gropeni.csv");
    assert_eq!(std::fs::read_to_string(path).unwrap(), GROPENI_CSV);
}

fn figure_layers() -> PlotSpec {
    let series = Dataset::gropeni().series(&"OD".into()).unwrap();
    let curve = dense_grid(&fit_natural_spline(&series).unwrap(), 1000).unwrap();
    let map = IndexMap::reference(0.0, 308.0).unwrap();
    let fitted = fit_harmonic_scale(&curve, &HarmonicSpec::reference(), &map).unwrap();
    let reference = harmonic_curve(&curve.times(), &fitted, &map).unwrap();
    PlotSpec {
        width: 800,
        height: 500,
        title: "Dunare-Gropeni OD".into(),
        x_label: "days since 9/11/2003".into(),
        y_label: "OD (mg/l)".into(),
        layers: vec![
            Layer::curve(&curve, "blue", "spline"),
            Layer::curve(&reference, "red", "harmonic"),
            Layer::markers(
                series.knots().iter().map(|k| (k.t, k.y)).collect(),
                "black",
                "data",
            ),
        ],
    }
}

#[test]
fn spline_with_harmonic_overlay_svg() {
    let svg = render_svg(&figure_layers()).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let polylines: Vec<&str> = svg.lines().filter(|l| l.starts_with("<polyline")).collect();
    assert_eq!(polylines.len(), 2);
    assert!(polylines[0].contains("stroke=\"blue\""));
    assert!(polylines[1].contains("stroke=\"red\""));
    for line in &polylines {
        let points = line.split("points=\"").nth(1).unwrap();
        assert_eq!(points.split(' ').count(), 1000);
    }
    assert_eq!(svg.matches("<circle").count(), 11);
    assert_eq!(render_svg(&figure_layers()).unwrap(), svg);
}

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    let cell = prop_oneof![
        1 => Just(None),
        4 => (-1e4f64..1e4).prop_map(Some),
    ];
    (1usize..5, 0usize..15).prop_flat_map(move |(cols, rows)| {
        (
            proptest::collection::btree_set(0i64..20_000, rows),
            proptest::collection::vec(proptest::collection::vec(cell.clone(), cols), rows),
            Just(cols),
        )
            .prop_map(|(days, values, cols)| {
                let epoch = NaiveDate::from_ymd_opt(1995, 1, 1).unwrap();
                let header: Vec<String> = std::iter::once("Date".to_string())
                    .chain((0..cols).map(|c| format!("P{c}")))
                    .collect();
                let mut text = header.join(",") + "\n";
                for (d, vals) in days.iter().zip(&values) {
                    let date = epoch + chrono::Duration::days(*d);
                    let cells: Vec<String> = vals
                        .iter()
                        .map(|v| v.map_or("-".to_string(), |x| x.to_string()))
                        .collect();
                    text += &format!(
                        "{},{}\n",
                        wq_core::model::format_date(date),
                        cells.join(",")
                    );
                }
                parse_csv(&text, "S", "mem").unwrap()
            })
    })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(ds in arb_dataset()) {
        let text = ds.to_csv();
        prop_assert!(text.lines().all(|l| l.split(',').all(|c| c != "-")));
        let again = parse_csv(&text, ds.station(), ds.source()).unwrap();
        prop_assert_eq!(again, ds);
    }

    #[test]
    fn build_series_ignores_input_order(
        mut entries in proptest::collection::vec((0i64..3000, proptest::option::of(-50.0f64..50.0)), 1..30),
        seed in any::<u64>(),
    ) {
        entries.sort_by_key(|e| e.0);
        entries.dedup_by_key(|e| e.0);
        prop_assume!(entries.iter().any(|e| e.1.is_some()));
        let epoch = NaiveDate::from_ymd_opt(2003, 9, 11).unwrap();
        let param = Parameter::new("OD");
        let samples: Vec<Sample> = entries
            .iter()
            .map(|&(d, v)| Sample {
                station: "S".into(),
                date: epoch + chrono::Duration::days(d),
                parameter: param.clone(),
                value: v,
            })
            .collect();
        let base = build_series(&samples, "S", &param).unwrap();
        let mut shuffled = samples.clone();
        let mut r = rng(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut r);
        prop_assert_eq!(build_series(&shuffled, "S", &param).unwrap(), base.clone());

        prop_assert_eq!(base.len(), entries.iter().filter(|e| e.1.is_some()).count());
        let present: Vec<i64> = entries.iter().filter(|e| e.1.is_some()).map(|e| e.0).collect();
        for (i, j) in [(0, base.len() - 1), (0, base.len() / 2)] {
            let dt = base.knots()[j].t - base.knots()[i].t;
            prop_assert_eq!(dt, (present[j] - present[i]) as f64);
        }
    }
}
