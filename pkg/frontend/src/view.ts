/** Board view model and DOM rendering.
 *
 * The view model is a pure function of the service's state JSON and
 * converts back to it exactly, so rendered state can never drift from
 * what the server sent.
 */

import type { Color, StateJson } from "./types.js";

export interface BoardView {
  /** Per-pile chip colors, bottom to top; empty array for an empty pile. */
  piles: Color[][];
  blue: { guards: number; prisoners: number };
  red: { guards: number; prisoners: number };
  active: Color;
  phaseBanner: string;
  winner: Color | null;
}

const COLOR_NAMES: Record<Color, string> = { b: "Blue", r: "Red" };

function phaseBanner(state: StateJson): string {
  switch (state.phase.kind) {
    case "turn_start":
      return `${COLOR_NAMES[state.active]} starts a round`;
    case "in_round":
      return `${COLOR_NAMES[state.active]} continues the round`;
    case "await_rescue_donation":
      return `${COLOR_NAMES[state.active]} is out of chips — opponent may donate a prisoner`;
    case "await_capture_discard": {
      const owner = COLOR_NAMES[state.phase.color as Color];
      return `${owner} must choose a capture discard on pile ${(state.phase.pile ?? 0) + 1}`;
    }
  }
}

export function boardView(state: StateJson): BoardView {
  return {
    piles: state.board.map((pile) =>
      pile === "_" ? [] : (pile.split("") as Color[]),
    ),
    blue: { ...state.blue },
    red: { ...state.red },
    active: state.active,
    phaseBanner: phaseBanner(state),
    winner: state.winner,
  };
}

/** Inverse of boardView over the fields it preserves; used to prove the
 * render pipeline cannot reshape server state. */
export function viewToState(view: BoardView, phase: StateJson["phase"]): StateJson {
  return {
    board: view.piles.map((pile) => (pile.length === 0 ? "_" : pile.join(""))),
    blue: { ...view.blue },
    red: { ...view.red },
    active: view.active,
    phase,
    winner: view.winner,
  };
}

function el(
  doc: Document,
  tag: string,
  className: string,
  text?: string,
): HTMLElement {
  const node = doc.createElement(tag);
  node.className = className;
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function renderHand(
  doc: Document,
  color: Color,
  hand: { guards: number; prisoners: number },
  isActive: boolean,
): HTMLElement {
  const panel = el(doc, "div", `hand hand-${color}${isActive ? " hand-active" : ""}`);
  panel.appendChild(el(doc, "h3", "hand-title", COLOR_NAMES[color]));
  panel.appendChild(el(doc, "span", "hand-guards", `guards: ${hand.guards}`));
  panel.appendChild(
    el(doc, "span", "hand-prisoners", `prisoners: ${hand.prisoners}`),
  );
  return panel;
}

export function renderBoard(container: HTMLElement, state: StateJson): BoardView {
  const doc = container.ownerDocument;
  const view = boardView(state);
  container.replaceChildren();

  container.appendChild(el(doc, "div", "phase-banner", view.phaseBanner));
  if (view.winner !== null) {
    container.appendChild(
      el(doc, "div", "winner-banner", `${COLOR_NAMES[view.winner]} wins`),
    );
  }

  const board = el(doc, "div", "board");
  view.piles.forEach((pile, index) => {
    const pileNode = el(doc, "div", "pile");
    pileNode.dataset.pile = String(index);
    const stack = el(doc, "div", "stack");
    // render top chip last so it sits visually on top
    for (const chip of pile) {
      stack.appendChild(el(doc, "span", `chip chip-${chip}`, chip));
    }
    if (pile.length === 0) {
      stack.appendChild(el(doc, "span", "chip chip-empty", "·"));
    }
    pileNode.appendChild(stack);
    pileNode.appendChild(el(doc, "span", "pile-label", `pile ${index + 1}`));
    board.appendChild(pileNode);
  });
  container.appendChild(board);

  const hands = el(doc, "div", "hands");
  hands.appendChild(renderHand(doc, "b", view.blue, view.active === "b"));
  hands.appendChild(renderHand(doc, "r", view.red, view.active === "r"));
  container.appendChild(hands);
  return view;
}
