import { expect, test } from "vitest";

import { StateObj, rationalToString } from "../src/api/types.js";
import { sparkPath } from "../src/view/sparkline.js";
import { loadJson, loadState } from "./helpers.js";

test("every recorded state passes the strict wire schema", () => {
  for (const rel of [
    "cycle/state0.json",
    "cycle/state1.json",
    "cycle/state2.json",
    "cycle/state_after_undo.json",
    "badges/state0.json",
    "badges/state_final.json",
    "chain/state0.json",
    "chain/state1.json",
  ]) {
    expect(() => loadState(rel)).not.toThrow();
  }
});

test("unknown fields are rejected, not silently displayed", () => {
  const state = loadJson("cycle/state0.json") as Record<string, unknown>;
  expect(StateObj.safeParse({ ...state, surprise: 1 }).success).toBe(false);
  expect(StateObj.safeParse({ ...state, version: "0" }).success).toBe(false);
});

test("multiplicities render integral and fractional forms", () => {
  expect(rationalToString(1)).toBe("1");
  expect(rationalToString(3)).toBe("3");
  expect(rationalToString({ num: 1, den: 2 })).toBe("1/2");
});

test("sparkline path follows the counts", () => {
  expect(sparkPath([1, 3, 2], 120, 28, 2)).toBe("M2,18L60,2L118,10");
  expect(sparkPath([], 120, 28)).toBe("");
  expect(sparkPath([null, null], 120, 28)).toBe("");
});

test("sparkline lifts the pen over gaps", () => {
  const d = sparkPath([2, null, 4], 120, 28, 2);
  expect(d).toBe("M2,14M118,2");
});
