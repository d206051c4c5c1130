#pragma once

// Generated from data/glyphs.txt; keep the two in sync.

namespace isa::detail {

inline constexpr char kGlyphData[] = R"GLYPHS(
# 16x16 letter masks, '#' = set pixel. Latin A-Z, Greek alpha-omega.

A
................
......####......
.....######.....
.....######.....
.....######.....
....####.###....
....###..###....
...####..####...
...###....###...
...##########...
..############..
..############..
..###......###..
.####......####.
................
................

B
................
..#########.....
..###########...
..####..#####...
..####...####...
..####...####...
..####..#####...
..##########....
..###########...
..####....####..
..####....####..
..####....####..
..####..######..
..###########...
..##########....
................

C
................
......#######...
....##########..
...###########..
...####......#..
..####..........
..####..........
..####..........
..####..........
..####..........
..####..........
...####......#..
...###########..
....##########..
......#######...
................

D
................
.#########......
.###########....
.############...
.####....####...
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.####....####...
.############...
.###########....
.#########......
................

E
................
...##########...
...##########...
...##########...
...####.........
...####.........
...#########....
...#########....
...#########....
...####.........
...####.........
...####.........
...##########...
...##########...
...##########...
................

F
................
...##########...
...##########...
...##########...
...####.........
...####.........
...#########....
...##########...
...##########...
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
................

G
................
.....#######....
...###########..
..############..
..####..........
.####...........
.####...........
.####....#####..
.####...######..
.####....#####..
.####......###..
..####.....###..
..############..
...###########..
.....#######....
................

H
................
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.#############..
.#############..
.#############..
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.####.....####..
.####.....####..
................

I
................
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......####......
................

J
................
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.......###......
.....####.......
.....###........
................

K
................
.####....#####..
.####...#####...
.####..#####....
.####.#####.....
.#########......
.########.......
.#######........
.#######........
.########.......
.####.####......
.####..#####....
.####...#####...
.####....#####..
.####.....#####.
................

L
................
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
...####.........
...##########...
...##########...
...##########...
................

M
................
................
.####......####.
.#####....#####.
.#####....#####.
.######..######.
.######..######.
.###.######.###.
.###..####..###.
.###..####..###.
.###..####..###.
.###...##...###.
.###........###.
.###........###.
................
................

N
................
.#####....####..
.#####....####..
.######...####..
.######...####..
.#######..####..
.#######..####..
.####.###.####..
.####.###.####..
.####..#######..
.####..#######..
.####...######..
.####...######..
.####....#####..
.####....#####..
................

O
................
.....######.....
...##########...
..############..
..####....####..
.####......####.
.####......####.
.####......####.
.####......####.
.####......####.
.####......####.
..####....####..
..############..
...##########...
.....######.....
................

P
................
..#########.....
..###########...
..############..
..####....####..
..####....####..
..####....####..
..####..######..
..###########...
..##########....
..####..........
..####..........
..####..........
..####..........
..####..........
................

Q
................
.....######.....
....########....
...####..####...
..####....####..
..###......###..
..###......###..
..###......###..
..###......###..
..####....####..
...####..####...
....########....
.....######.....
.........###....
..........###...
................

R
................
.#########......
.###########....
.###########....
.####...####....
.####...####....
.####...####....
.##########.....
.#########......
.##########.....
.####...####....
.####...####....
.####....####...
.####....####...
.####.....####..
................

S
................
....########....
...#########....
..##########....
..###...........
..####..........
..#######.......
...########.....
....#########...
.......######...
.........####...
..#......####...
..###########...
..##########....
...########.....
................

T
................
.#############..
.#############..
.#############..
......###.......
......###.......
......###.......
......###.......
......###.......
......###.......
......###.......
......###.......
......###.......
......###.......
......###.......
................

U
................
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
..####....####..
...##########...
...##########...
.....######.....
................

V
................
.####......####.
..###......###..
..###......###..
..####....####..
...###....###...
...####..####...
...####..####...
....###..###....
....########....
.....######.....
.....######.....
.....######.....
......####......
................
................

W
................
................
................
.###...##...###.
.###..####..###.
..##..####..##..
..##..####..##..
..###.####.###..
..###.#..#.###..
...####..####...
...####..####...
...####..####...
...###....###...
................
................
................

X
................
.####......###..
..####....####..
...####..####...
....###..###....
....########....
.....######.....
......####......
.....######.....
.....######.....
....########....
...####..####...
...####..####...
..####....####..
.####......####.
................

Y
................
.####......####.
..####....####..
...####...###...
...####..####...
....########....
.....#######....
.....######.....
......####......
......####......
......####......
......####......
......####......
......####......
......####......
................

Z
................
..############..
..############..
..###########...
.........####...
........####....
.......####.....
......####......
.....#####......
.....####.......
....####........
...####.........
..############..
..############..
..############..
................

alpha
................
....######.####.
...############.
..############..
.#####..######..
.####....####...
.####....####...
.####....####...
.####....####...
.####...#####...
.#####..#####...
..#############.
..#############.
....######..###.
................
................

beta
................
.....#####......
....######......
...###..###.....
...###..###.....
...###.###......
...########.....
...###..####....
...###...###....
...###...###....
...#########....
...########.....
...###..........
...###..........
...###..........
................

gamma
................
..###.....####..
..####....###...
....###...###...
....###..####...
.....##..###....
.....###.###....
.....######.....
......#####.....
......#####.....
......####......
.......###......
.......###......
.......###......
.......###......
................

delta
................
.....######.....
...#########....
...####...#.....
...#####........
....#######.....
...#########....
..####...####...
..####...####...
..###.....###...
..###.....###...
..####...####...
...####.####....
...#########....
.....#####......
................

epsilon
................
....########....
...#########....
...#########....
..#####.........
...####.........
...#######......
....#######.....
...########.....
..#####.........
..####..........
..#####.....#...
..###########...
...##########...
.....#######....
................

zeta
................
....#######.....
....#######.....
.......###......
......###.......
.....###........
....###.........
....###.........
....###.........
....###.........
.....#####......
......#####.....
.........##.....
.........##.....
.........#......
................

eta
................
...###.####.....
...#########....
...##########...
...####...###...
...###....###...
...###....###...
...###....###...
...###....###...
...###....###...
...###....###...
..........###...
..........###...
..........###...
..........###...
................

theta
................
.....#####......
....#######.....
...####.####....
..####...####...
..####...####...
..###########...
..###########...
..###########...
..###.....###...
..####...####...
..####...####...
...####.####....
....#######.....
.....#####......
................

iota
................
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#####.......
....#######.....
....#######.....
.....######.....
................

kappa
................
.####....#####..
.####...#####...
.####..#####....
.#########......
.#########......
.#########......
.##########.....
.##########.....
.####..#####....
.####..######...
.####...#####...
.####....#####..
.####.....#####.
................
................

lambda
................
...####.........
...#####........
.....####.......
......###.......
......###.......
......####......
.....#####......
.....#####......
....#######.....
....###.###.....
....###.####....
...####..###....
...###...###....
..####...####...
................

mu
................
..####...####...
..####...####...
..####...####...
..####...####...
..####...####...
..####...####...
..####...####...
..####..#####...
..############..
..############..
..####..........
..####..........
..####..........
..####..........
................

nu
................
................
.####.....###...
..####....####..
..####.....####.
..####.....####.
...####....####.
...####....####.
....###...#####.
....####..####..
....####.####...
.....########...
.....#######....
......#####.....
................
................

xi
................
....#######.....
....#######.....
.....###........
.....##.........
.....####.......
.....#####......
....####........
....###.........
....###.........
....######......
......#####.....
.........##.....
.........##.....
.........#......
................

omicron
................
.....######.....
...##########...
..############..
..####....####..
.#####....#####.
.####......####.
.####......####.
.####......####.
.#####....#####.
..####....####..
..############..
...##########...
.....######.....
................
................

pi
................
................
.##############.
.##############.
...####..####...
...####..####...
...####..####...
...####..####...
...####..####...
...####..####...
...####..####...
...####...#####.
...###....#####.
................
................
................

rho
................
.....######.....
....########....
...####.#####...
..####...####...
..###.....###...
..###.....###...
..####...####...
..####...####...
..##########....
..#########.....
..###...#.......
..###...........
..###...........
..###...........
................

sigma
................
................
....###########.
..#############.
..###########...
.####....####...
.####....####...
.####.....###...
.####....####...
.####....####...
..###########...
...#########....
....######......
................
................
................

tau
................
.##############.
.##############.
.##############.
......####......
......####......
......####......
......####......
......####......
......####......
......####......
......#####.....
......######....
.......#####....
................
................

upsilon
................
.#####...####...
.#####....####..
.#####....####..
.#####....#####.
.#####.....####.
.#####.....####.
.#####.....####.
.#####.....####.
.#####....#####.
.#####....#####.
.#####...#####..
.#############..
..###########...
...########.....
................

phi
................
....##..####....
...###.######...
..############..
..###.####.###..
..###.####.###..
..###.####.###..
..###.####.###..
..############..
...##########...
....########....
......####......
......####......
......####......
......####......
................

chi
................
..####...####...
..#####..###....
....###.####....
....#######.....
.....######.....
.....#####......
......###.......
.....####.......
.....#####......
....######......
....######......
...####.###.....
...###..#####...
..####...####...
................

psi
................
..###.####.###..
..###.####.###..
..###.####.###..
..###.####.###..
..###.####.###..
..###.####.###..
..###.####.###..
..############..
...##########...
....########....
......####......
......####......
......####......
......####......
................

omega
................
................
................
..###......###..
..###......###..
.####......####.
.###........###.
.###..####..###.
.###..####..###.
.####.####..###.
.####.####.####.
..############..
...####..####...
................
................
................
)GLYPHS";

}  // namespace isa::detail
