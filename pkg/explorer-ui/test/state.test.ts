import { describe, expect, it } from "vitest";

import {
  DEFAULT_STATE,
  decodeState,
  encodeState,
  ExplorerState,
} from "../src/state.js";

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe("state URL serialization", () => {
  it("default state encodes to an empty query", () => {
    expect(encodeState(DEFAULT_STATE)).toBe("");
  });

  it("decoding an empty query restores the defaults", () => {
    expect(decodeState("")).toEqual(DEFAULT_STATE);
  });

  it("round trips a fully populated state", () => {
    const state: ExplorerState = {
      minSupport: 0.05,
      minConfidence: 0.9,
      minLift: 2.5,
      lhsContains: "hair",
      rhsContains: "type=",
      sort: "lift",
      desc: false,
      offset: 50,
      limit: 10,
      selected: 123,
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("round trips randomized states", () => {
    const rand = mulberry32(20240810);
    const sorts = ["support", "confidence", "coverage", "lift", "count"];
    const needles = ["", "type=", "hair", "legs=[4,8]", "a,b"];
    for (let i = 0; i < 200; i++) {
      const state: ExplorerState = {
        minSupport: rand() < 0.5 ? null : Math.round(rand() * 100) / 100,
        minConfidence: rand() < 0.5 ? null : Math.round(rand() * 100) / 100,
        minLift: rand() < 0.5 ? null : Math.round(rand() * 50) / 10,
        lhsContains: needles[Math.floor(rand() * needles.length)],
        rhsContains: needles[Math.floor(rand() * needles.length)],
        sort: sorts[Math.floor(rand() * sorts.length)],
        desc: rand() < 0.5,
        offset: Math.floor(rand() * 200),
        limit: [10, 25, 50][Math.floor(rand() * 3)],
        selected: rand() < 0.5 ? null : Math.floor(rand() * 500),
      };
      expect(decodeState(encodeState(state))).toEqual(state);
    }
  });

  it("ignores malformed numbers and keeps defaults", () => {
    const state = decodeState("minSupport=abc&offset=-3&limit=2.5");
    expect(state.minSupport).toBeNull();
    expect(state.offset).toBe(DEFAULT_STATE.offset);
    expect(state.limit).toBe(DEFAULT_STATE.limit);
  });

  it("percent-encodes label needles", () => {
    const state = { ...DEFAULT_STATE, rhsContains: "type=mollusc.et.al" };
    const q = encodeState(state);
    expect(q).toContain("rhsContains=type%3Dmollusc.et.al");
    expect(decodeState(q).rhsContains).toBe("type=mollusc.et.al");
  });
});
