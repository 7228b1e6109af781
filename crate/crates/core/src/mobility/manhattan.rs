use rand::Rng;

use super::{MobilityScenario, NodePosition, Region, Waypoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    East,
    North,
    West,
    South,
}

impl Heading {
    const ALL: [Heading; 4] = [Heading::East, Heading::North, Heading::West, Heading::South];

    pub fn left(self) -> Heading {
        match self {
            Heading::East => Heading::North,
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
        }
    }

    pub fn right(self) -> Heading {
        self.left().left().left()
    }

    pub fn reverse(self) -> Heading {
        self.left().left()
    }

    fn step(self, (c, r): (usize, usize), region: &Region) -> Option<(usize, usize)> {
        match self {
            Heading::East => (c < region.columns()).then(|| (c + 1, r)),
            Heading::West => c.checked_sub(1).map(|c| (c, r)),
            Heading::North => (r < region.rows()).then(|| (c, r + 1)),
            Heading::South => r.checked_sub(1).map(|r| (c, r)),
        }
    }
}

/// Probability of each street a node at intersection `(column, row)` may take
/// next.
///
/// Without a previous heading every available street is equally likely. When
/// arriving with `heading`: straight 0.5 and each turn 0.25 if all three are
/// available, 0.5 each if only two are, and certainty if only one is. A
/// U-turn is taken only when nothing else is possible.
pub fn turn_options(
    region: &Region,
    at: (usize, usize),
    heading: Option<Heading>,
) -> Vec<(Heading, f64)> {
    let open = |h: &Heading| h.step(at, region).is_some();
    match heading {
        None => {
            let dirs: Vec<Heading> = Heading::ALL.into_iter().filter(open).collect();
            let p = 1.0 / dirs.len() as f64;
            dirs.into_iter().map(|h| (h, p)).collect()
        }
        Some(h) => {
            let dirs: Vec<Heading> = [h, h.left(), h.right()].into_iter().filter(open).collect();
            match dirs.len() {
                3 => vec![(dirs[0], 0.5), (dirs[1], 0.25), (dirs[2], 0.25)],
                2 => vec![(dirs[0], 0.5), (dirs[1], 0.5)],
                1 => vec![(dirs[0], 1.0)],
                _ => vec![(h.reverse(), 1.0)],
            }
        }
    }
}

fn choose<R: Rng>(rng: &mut R, options: &[(Heading, f64)]) -> Heading {
    if options.len() == 1 {
        return options[0].0;
    }
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for &(h, p) in options {
        acc += p;
        if u < acc {
            return h;
        }
    }
    options[options.len() - 1].0
}

/// Block-by-block movement; a forced choice consumes no random draw.
pub(super) fn trajectory<R: Rng>(
    rng: &mut R,
    region: &Region,
    scenario: &MobilityScenario,
    start: NodePosition,
) -> Vec<Waypoint> {
    let mut path = vec![Waypoint { t: 0.0, pos: start }];
    if scenario.velocity == 0.0 {
        return path;
    }
    let block = region.block_length;
    let leg = block / scenario.velocity;
    let mut at = (
        (start.x / block).round() as usize,
        (start.y / block).round() as usize,
    );
    let mut heading = None;
    let mut blocks = 0usize;
    while (blocks as f64) * leg < scenario.duration {
        let h = choose(rng, &turn_options(region, at, heading));
        // turn_options only offers headings with a street behind them
        at = h.step(at, region).expect("heading leads off the grid");
        heading = Some(h);
        blocks += 1;
        path.push(Waypoint {
            t: blocks as f64 * leg,
            pos: region.intersection(at.0, at.1),
        });
    }
    path
}
