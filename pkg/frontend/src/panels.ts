/** Action form, analysis panel, and the bug banner.
 *
 * The form mirrors the server's legal-action list and nothing else: it
 * can only submit actions the server listed. If the server then rejects
 * one of its own listed actions, that is a bug and is surfaced as such.
 */

import type { ActionJson, AnalysisJson } from "./types.js";
import { actionLabel } from "./types.js";

export interface ActionFormHandle {
  setPending(pending: boolean): void;
}

export function renderActionForm(
  container: HTMLElement,
  legalActions: ActionJson[],
  onSubmit: (action: ActionJson) => void,
): ActionFormHandle {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const buttons: HTMLButtonElement[] = [];
  if (legalActions.length === 0) {
    const note = doc.createElement("p");
    note.className = "no-actions";
    note.textContent = "waiting — no action available";
    container.appendChild(note);
  }
  for (const action of legalActions) {
    const button = doc.createElement("button");
    button.type = "button";
    button.className = `action action-${action.type}`;
    button.textContent = actionLabel(action);
    button.addEventListener("click", () => onSubmit(action));
    container.appendChild(button);
    buttons.push(button);
  }
  return {
    setPending(pending: boolean) {
      // one in-flight mutation at a time: everything disabled while pending
      for (const button of buttons) {
        button.disabled = pending;
      }
    },
  };
}

export function renderAnalysis(
  container: HTMLElement,
  analysis: AnalysisJson | null,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  if (analysis === null) {
    const note = doc.createElement("p");
    note.className = "analysis-unavailable";
    note.textContent = "analysis unavailable mid-capture";
    container.appendChild(note);
    return;
  }
  const rows: Array<[string, string]> = [
    ["board type", analysis.board_type],
    [
      "verdict",
      `${analysis.active_wins ? "win" : "loss"} for the active player (${analysis.active})`,
    ],
    ["nu", String(analysis.nu)],
    ["mu", String(analysis.mu)],
  ];
  if (analysis.solver !== null) {
    rows.push(["solver winner", analysis.solver.winner]);
  }
  const list = doc.createElement("dl");
  list.className = "analysis";
  for (const [term, detail] of rows) {
    const dt = doc.createElement("dt");
    dt.textContent = term;
    const dd = doc.createElement("dd");
    dd.textContent = detail;
    list.appendChild(dt);
    list.appendChild(dd);
  }
  container.appendChild(list);
  const provenance = doc.createElement("p");
  provenance.className = "provenance";
  provenance.textContent = analysis.provenance;
  container.appendChild(provenance);
}

export function showBugBanner(container: HTMLElement, message: string): void {
  const doc = container.ownerDocument;
  const banner = doc.createElement("div");
  banner.className = "bug-banner";
  banner.textContent = `bug: ${message}`;
  container.prepend(banner);
}

export function showError(container: HTMLElement, message: string): void {
  const doc = container.ownerDocument;
  const note = doc.createElement("div");
  note.className = "error-banner";
  note.textContent = message;
  container.prepend(note);
}
