//! Regenerating figures and tables and comparing them with the fixtures.

use clap::ValueEnum;
use serde::Serialize;
use sumchain::billiards::{decompose, halved_label, lemma_predict, rect_table, BilliardTable};
use sumchain::constructions::{
    build_necklace_from_corners, extend_necklace, figurate_table_rows, square_necklace_rows,
    FigurateKind,
};
use sumchain::fixtures;
use sumchain::search::{enumerate_chains, enumerate_necklaces};
use sumchain::sumgraph::format_beads;
use sumchain::{verify_sequence, Chain, Necklace, SumGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig10,
    Fig12,
    Fig13,
    Fig14,
    TableSquares,
    TableTriangular,
    TablePentagonal,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub id: String,
    pub matched: bool,
    pub lines: Vec<String>,
}

impl Report {
    fn new(id: FigureId) -> Self {
        Report {
            id: id
                .to_possible_value()
                .expect("named")
                .get_name()
                .to_string(),
            matched: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        let line = line.into();
        if ok {
            self.lines.push(line);
        } else {
            self.matched = false;
            self.lines.push(format!("MISMATCH {line}"));
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

type Res<T> = Result<T, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Verifies a bead fixture against its manifest entry and returns the beads.
fn verified_fixture(report: &mut Report, id: &str) -> Res<Vec<u32>> {
    let e = fixtures::entry(id).map_err(err)?;
    let beads = fixtures::beads(id).map_err(err)?;
    let v = verify_sequence(&beads, &e.target_set(), e.closed);
    let what = if e.closed { "necklace" } else { "chain" };
    report.check(
        v.valid,
        format!("{id}: {what} of {} beads {v}", beads.len()),
    );
    Ok(beads)
}

pub fn run(id: FigureId) -> Res<Report> {
    let mut r = Report::new(id);
    match id {
        FigureId::Fig1 => {
            for fid in ["fig1-15", "fig1-16", "fig1-17"] {
                let beads = verified_fixture(&mut r, fid)?;
                let ts = fixtures::entry(fid).map_err(err)?.target_set();
                let g = SumGraph::build(beads.len() as u32, &ts).map_err(err)?;
                let all = enumerate_chains(&g, 1000).map_err(err)?;
                r.check(
                    all.items.contains(&Chain::new(beads.clone())),
                    format!("{fid}: found by search among {} chains", all.items.len()),
                );
            }
        }
        FigureId::Fig2 | FigureId::Fig3 => {
            let fid = if id == FigureId::Fig2 { "fig2" } else { "fig3" };
            let beads = verified_fixture(&mut r, fid)?;
            let ts = fixtures::entry(fid).map_err(err)?.target_set();
            let g = SumGraph::build(beads.len() as u32, &ts).map_err(err)?;
            let all = enumerate_necklaces(&g, 1000).map_err(err)?;
            let nk = Necklace::new(beads);
            r.check(
                all.items.contains(&nk),
                format!("{fid}: found by search among {} necklaces", all.items.len()),
            );
            r.note(format!("canonical {}", format_beads(nk.beads()).trim_end()));
        }
        FigureId::Fig10 => {
            let (t, f, g) = rect_table(4, 13, 25, 34).map_err(err)?;
            let d = decompose(&f, &g).map_err(err)?;
            let pred = lemma_predict(&t).map_err(err)?;
            r.note(format!(
                "table {t} P {} pockets {:?}",
                t.perimeter(),
                t.pockets()
            ));
            let path = d.paths.first().map(|p| format_beads(p)).unwrap_or_default();
            let cycle = d
                .cycles
                .first()
                .map(|c| format_beads(c))
                .unwrap_or_default();
            let want_path = fixtures::entry("fig10-path").map_err(err)?.text();
            let want_cycle = fixtures::entry("fig10-cycle").map_err(err)?.text();
            r.check(
                d.paths.len() == 1 && path == want_path,
                format!("path {}", path.trim_end()),
            );
            r.check(
                d.cycles.len() == 1 && cycle == want_cycle,
                format!("cycle {}", cycle.trim_end()),
            );
            r.check(
                pred.gcd == 3 && !pred.complete,
                format!(
                    "gcd {} {}",
                    pred.gcd,
                    if pred.complete {
                        "complete"
                    } else {
                        "incomplete"
                    }
                ),
            );
        }
        FigureId::Fig12 => {
            let t = BilliardTable::new(13, 21, 34, 42).map_err(err)?;
            let (f, g) = t.folds();
            let d = decompose(&f, &g).map_err(err)?;
            let labels: Vec<String> = t
                .corners()
                .iter()
                .map(|&c| {
                    if c % 2 == 1 {
                        format!("({})", halved_label(c))
                    } else {
                        halved_label(c)
                    }
                })
                .collect();
            r.note(format!("corners {}", labels.join(" ")));
            let mut pairs: Vec<(u32, u32)> = d
                .edges()
                .into_iter()
                .map(|(x, y, _)| (x.min(y), x.max(y)))
                .collect();
            pairs.sort_unstable();
            r.check(
                pairs == fixtures::pairs("fig12-pairs").map_err(err)?,
                format!("{} bounce pairs", pairs.len()),
            );
            r.check(
                d.is_complete_path() && d.paths[0].len() == 21,
                format!(
                    "path {}",
                    format_beads(d.paths.first().map_or(&[][..], |p| p)).trim_end()
                ),
            );
        }
        FigureId::Fig13 => {
            let e = fixtures::entry("fig13-triples").map_err(err)?;
            let ts = e.target_set();
            let mut nk = build_necklace_from_corners([1, 15, 91, 105], &ts).map_err(err)?;
            r.note(format!(
                "90-necklace {}",
                format_beads(nk.beads()).trim_end()
            ));
            for (u, bead, v) in fixtures::triples("fig13-triples").map_err(err)? {
                nk = extend_necklace(&nk, &ts).map_err(err)?;
                let b = nk.beads();
                let i = b.iter().position(|&x| x == bead).ok_or("bead missing")?;
                let mut around = [b[(i + b.len() - 1) % b.len()], b[(i + 1) % b.len()]];
                around.sort_unstable();
                r.check(
                    around == [u.min(v), u.max(v)],
                    format!("{} {bead} {}", around[0], around[1]),
                );
            }
        }
        FigureId::Fig14 => {
            let left = Necklace::new(verified_fixture(&mut r, "fig14-left")?);
            let right = Necklace::new(verified_fixture(&mut r, "fig14-right")?);
            r.check(left != right, "the two necklaces are distinct");
        }
        FigureId::TableSquares => {
            let listed = fixtures::square_table();
            let mut pairs: Vec<(u64, u64)> = listed.iter().map(|row| (row.r, row.s)).collect();
            pairs.sort_unstable();
            pairs.dedup();
            let rows = square_necklace_rows(&pairs).map_err(err)?;
            let coprime: Vec<_> = rows.iter().filter(|row| row.coprime).collect();
            r.check(
                coprime.len() == listed.len(),
                format!("{} coprime rows, {} listed", coprime.len(), listed.len()),
            );
            for (got, want) in coprime.iter().zip(&listed) {
                let mut sides = got.double_sides;
                sides.sort_unstable();
                let mut want_sides = want.double_sides;
                want_sides.sort_unstable();
                let [a, b, c, d] = got.roots;
                let cover = if got.coverage_ok { "" } else { " (B > P + 1)" };
                r.check(
                    (got.r, got.s, got.x, got.y, got.roots, sides, got.perimeter)
                        == (
                            want.r,
                            want.s,
                            want.x,
                            want.y,
                            want.roots,
                            want_sides,
                            want.perimeter,
                        ),
                    format!(
                        "{},{} | {},{} | {a},{b},{c},{d} | {},{} | {}{cover}",
                        got.r, got.s, got.x, got.y, sides[0], sides[1], got.perimeter
                    ),
                );
            }
        }
        FigureId::TableTriangular | FigureId::TablePentagonal => {
            let kind = if id == FigureId::TableTriangular {
                FigurateKind::Triangular
            } else {
                FigurateKind::Pentagonal
            };
            for row in figurate_table_rows(kind) {
                let [a, b, c, d] = row.corners;
                let mut line = format!(
                    "row {} | {a},{b},{c},{d} | {},{} | {}",
                    row.index, row.computed_sides[0], row.computed_sides[1], row.computed_perimeter
                );
                match (&row.necklace_len, &row.failure) {
                    (Some(len), _) => line.push_str(&format!(" | necklace {len}")),
                    (None, Some(f)) => line.push_str(&format!(" | {f}")),
                    (None, None) => {}
                }
                if row.merged {
                    line.push_str(&format!(" | {} cycles spliced", row.components));
                }
                for diff in &row.diffs {
                    line.push_str(&format!(
                        " | diff {}",
                        serde_json::to_string(diff).map_err(err)?
                    ));
                }
                r.check(row.verified(), line);
            }
        }
    }
    Ok(r)
}
