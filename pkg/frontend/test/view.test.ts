import { describe, expect, it } from "vitest";

import { boardView, renderBoard, viewToState } from "../src/view.js";
import type { StateJson } from "../src/types.js";

const STATE: StateJson = {
  board: ["rb", "_", "r"],
  blue: { guards: 2, prisoners: 1 },
  red: { guards: 1, prisoners: 0 },
  active: "b",
  phase: { kind: "turn_start" },
  winner: null,
};

describe("board view model", () => {
  it("splits piles into bottom-to-top chip lists", () => {
    const view = boardView(STATE);
    expect(view.piles).toEqual([["r", "b"], [], ["r"]]);
  });

  it("round-trips back to the exact server state", () => {
    const view = boardView(STATE);
    expect(viewToState(view, STATE.phase)).toEqual(STATE);
  });

  it("round-trips a pending-capture state", () => {
    const pending: StateJson = {
      ...STATE,
      board: ["rbb", "_", "r"],
      phase: { kind: "await_capture_discard", pile: 0, color: "b" },
    };
    expect(viewToState(boardView(pending), pending.phase)).toEqual(pending);
  });
});

describe("board rendering", () => {
  it("renders one pile node per pile with the right chips", () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    renderBoard(root, STATE);
    const piles = root.querySelectorAll(".pile");
    expect(piles).toHaveLength(3);
    expect(piles[0].querySelectorAll(".chip-b")).toHaveLength(1);
    expect(piles[0].querySelectorAll(".chip-r")).toHaveLength(1);
    expect(piles[1].querySelector(".chip-empty")).not.toBeNull();
  });

  it("marks the active hand and shows counts", () => {
    const root = document.createElement("div");
    renderBoard(root, STATE);
    const active = root.querySelector(".hand-active");
    expect(active?.classList.contains("hand-b")).toBe(true);
    expect(root.querySelector(".hand-b .hand-guards")?.textContent).toBe(
      "guards: 2",
    );
  });

  it("shows the winner banner only on terminal states", () => {
    const root = document.createElement("div");
    renderBoard(root, STATE);
    expect(root.querySelector(".winner-banner")).toBeNull();
    renderBoard(root, { ...STATE, winner: "r" });
    expect(root.querySelector(".winner-banner")?.textContent).toBe("Red wins");
  });

  it("describes a pending capture in the phase banner", () => {
    const root = document.createElement("div");
    renderBoard(root, {
      ...STATE,
      board: ["rbb", "_", "r"],
      phase: { kind: "await_capture_discard", pile: 0, color: "b" },
    });
    expect(root.querySelector(".phase-banner")?.textContent).toContain(
      "Blue must choose a capture discard on pile 1",
    );
  });
});
