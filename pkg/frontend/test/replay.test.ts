import { describe, expect, it } from "vitest";

import { Replayer } from "../src/replay.js";
import type { TransitionJson } from "../src/types.js";

function transition(pile: string): TransitionJson {
  return {
    actor: "b",
    action: { type: "place", pile: 0, color: "b" },
    state: {
      board: [pile],
      blue: { guards: 0, prisoners: 0 },
      red: { guards: 1, prisoners: 0 },
      active: "r",
      phase: { kind: "turn_start" },
      winner: null,
    },
    capture: false,
    round_ended: true,
  };
}

describe("Replayer", () => {
  it("renders every transition in order with a delay between steps", async () => {
    const rendered: string[] = [];
    const delays: number[] = [];
    const replayer = new Replayer(
      (t) => rendered.push(t.state.board[0]),
      600,
      async (ms) => {
        delays.push(ms);
      },
    );
    await replayer.play([transition("b"), transition("rb"), transition("brb")]);
    expect(rendered).toEqual(["b", "rb", "brb"]);
    expect(delays).toEqual([600, 600, 600]);
  });

  it("speed control rescales the delay", () => {
    const replayer = new Replayer(() => {}, 600, async () => {});
    replayer.setSpeed(2);
    expect(replayer.delay).toBe(300);
    replayer.setSpeed(0);
    expect(replayer.delay).toBe(0);
  });

  it("skips sleeping entirely at speed zero", async () => {
    let slept = 0;
    const replayer = new Replayer(() => {}, 600, async () => {
      slept += 1;
    });
    replayer.setSpeed(0);
    await replayer.play([transition("b"), transition("rb")]);
    expect(slept).toBe(0);
  });
});
