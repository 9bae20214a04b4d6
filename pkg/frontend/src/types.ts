/** Wire types mirroring the service JSON schemas verbatim. */

export type Color = "b" | "r";

export interface HandJson {
  guards: number;
  prisoners: number;
}

export interface PhaseJson {
  kind:
    | "turn_start"
    | "in_round"
    | "await_rescue_donation"
    | "await_capture_discard";
  pile?: number;
  color?: Color;
}

export interface StateJson {
  /** One string per pile, letters bottom-to-top, "_" for empty. */
  board: string[];
  blue: HandJson;
  red: HandJson;
  active: Color;
  phase: PhaseJson;
  winner: Color | null;
}

export interface ActionJson {
  type:
    | "place"
    | "capture_discard"
    | "discard_prisoner"
    | "donate_prisoner"
    | "rescue";
  pile?: number;
  color?: Color;
  donate?: boolean;
}

export interface TransitionJson {
  actor: Color;
  action: ActionJson;
  state: StateJson;
  capture: boolean;
  round_ended: boolean;
}

export interface AnalysisSummaryJson {
  empty_piles: number;
  red_singletons: number;
  blue_singletons: number;
  long_red: number[];
  long_blue: number[];
}

export interface AnalysisJson {
  summary: AnalysisSummaryJson;
  board_type: string;
  active: Color;
  active_wins: boolean;
  nu: number;
  mu: number;
  solver: { winner: Color; nodes: number } | null;
  provenance: string;
}

export interface SessionView {
  session_id: string;
  human: Color;
  engine_policy: string;
  state: StateJson;
  legal_actions: ActionJson[];
  analysis: AnalysisJson | null;
  created: string;
  updated: string;
  transitions?: TransitionJson[];
}

export interface HintJson {
  action: ActionJson | null;
  reason: string | null;
}

export function sameAction(a: ActionJson, b: ActionJson): boolean {
  return (
    a.type === b.type &&
    (a.pile ?? null) === (b.pile ?? null) &&
    (a.color ?? null) === (b.color ?? null) &&
    (a.donate ?? null) === (b.donate ?? null)
  );
}

export function actionLabel(action: ActionJson): string {
  switch (action.type) {
    case "place":
      return `place ${action.color} on pile ${(action.pile ?? 0) + 1}`;
    case "capture_discard":
      return `capture: discard a ${action.color} chip`;
    case "discard_prisoner":
      return "discard a prisoner";
    case "donate_prisoner":
      return "donate a prisoner";
    case "rescue":
      return action.donate ? "rescue: donate a prisoner" : "rescue: decline";
  }
}
