import { expect, test } from "vitest";

import { buildScene, hitTest, mixedSignColumns, VERTEX_R } from "../src/view/scene.js";
import { ringLayout } from "../src/view/layout.js";
import { loadState } from "./helpers.js";

const state0 = loadState("cycle/state0.json");

test("root 4-cycle renders two squares and two circles", () => {
  const scene = buildScene(state0);
  expect(scene.vertices).toHaveLength(4);
  const squares = scene.vertices.filter((v) => v.shape === "square").map((v) => v.index);
  const circles = scene.vertices.filter((v) => v.shape === "circle").map((v) => v.index);
  expect(squares).toEqual([0, 2]); // frozen
  expect(circles).toEqual([1, 3]); // unfrozen, clickable
  expect(scene.vertices.map((v) => v.label)).toEqual(["0", "1", "2", "3"]);
});

test("arrows form the single directed 4-cycle the service sent", () => {
  const scene = buildScene(state0);
  const pairs = scene.arrows.map((a) => [a.from, a.to]);
  expect(pairs).toEqual(state0.edges.map(([i, j]) => [i, j]));
  // walk the successor map once around
  const next = new Map(pairs.map(([i, j]) => [i, j]));
  let at = 0;
  const seen: number[] = [];
  for (let i = 0; i < 4; i++) {
    seen.push(at);
    at = next.get(at)!;
  }
  expect(at).toBe(0);
  expect([...seen].sort()).toEqual([0, 1, 2, 3]);
});

test("unit multiplicities draw no labels", () => {
  const scene = buildScene(state0);
  expect(scene.arrows.every((a) => a.label === null)).toBe(true);
});

test("no sign-coherence highlights on a healthy state", () => {
  const scene = buildScene(state0);
  expect(scene.signViolations).toEqual([]);
  expect(scene.vertices.every((v) => !v.violation)).toBe(true);
  // a deliberately mixed column would light up
  expect(mixedSignColumns([[1, -1], [1, 1]])).toEqual([1]);
});

test("arrow endpoints stop at the vertex boundary", () => {
  const scene = buildScene(state0);
  for (const a of scene.arrows) {
    const from = scene.vertices[a.from]!;
    const to = scene.vertices[a.to]!;
    expect(Math.hypot(a.x1 - from.x, a.y1 - from.y)).toBeGreaterThanOrEqual(VERTEX_R);
    expect(Math.hypot(a.x2 - to.x, a.y2 - to.y)).toBeGreaterThanOrEqual(VERTEX_R);
  }
});

test("clicking a vertex center hits it, clicking the corner hits nothing", () => {
  const scene = buildScene(state0);
  for (const v of scene.vertices) {
    expect(hitTest(scene, v.x, v.y)).toBe(v.index);
  }
  expect(hitTest(scene, 1, 1)).toBeNull();
});

test("layout and scene are deterministic", () => {
  expect(ringLayout(4, 520, 420)).toEqual(ringLayout(4, 520, 420));
  expect(JSON.stringify(buildScene(state0))).toBe(JSON.stringify(buildScene(state0)));
});

test("mutated state renders exactly the served arrows", () => {
  const state1 = loadState("cycle/state1.json");
  const scene = buildScene(state1);
  expect(scene.arrows.map((a) => [a.from, a.to])).toEqual(
    state1.edges.map(([i, j]) => [i, j]),
  );
  // mutation flipped the arrows at vertex 1: nothing points the old way
  const pairs = new Set(scene.arrows.map((a) => `${a.from},${a.to}`));
  expect(pairs.has("0,1")).toBe(false);
  expect(pairs.has("1,0")).toBe(true);
});
