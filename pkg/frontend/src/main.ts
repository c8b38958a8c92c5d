// DOM wiring.  All state lives in the controller; this file only reads
// inputs, forwards clicks, and re-renders panels from the view.

import { makeClient } from "./api";
import { ExplorerController, type ExplorerView } from "./controller";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element as T;
}

const programInput = byId<HTMLTextAreaElement>("program");
const stateInput = byId<HTMLInputElement>("state");
const fuelInput = byId<HTMLInputElement>("fuel");
const runButton = byId<HTMLButtonElement>("run");
const errorBox = byId<HTMLDivElement>("error");
const summaryBox = byId<HTMLDivElement>("summary");
const outputPanel = byId<HTMLDivElement>("output-panel");
const programView = byId<HTMLPreElement>("program-view");
const inputSlicePanel = byId<HTMLDivElement>("input-slice");
const sliceTextBox = byId<HTMLPreElement>("slice-text");
const showSliceText = byId<HTMLInputElement>("show-slice-text");
const modeBackward = byId<HTMLButtonElement>("mode-backward");
const modeForward = byId<HTMLButtonElement>("mode-forward");
const backwardSection = byId<HTMLDivElement>("backward-section");
const forwardSection = byId<HTMLDivElement>("forward-section");
const statementsPanel = byId<HTMLDivElement>("statements");
const inputTogglesPanel = byId<HTMLDivElement>("input-toggles");
const forwardOutputPanel = byId<HTMLDivElement>("forward-output");

const controller = new ExplorerController(makeClient(""), render);

function render(view: ExplorerView): void {
  runButton.disabled = view.busy;

  if (view.error) {
    const where =
      view.error.line !== undefined
        ? ` (line ${view.error.line}, column ${view.error.column})`
        : "";
    errorBox.textContent = view.error.message + where;
    errorBox.classList.toggle("fuel", view.error.fuelExhausted);
    errorBox.hidden = false;
  } else {
    errorBox.hidden = true;
  }

  const session = view.session;
  if (!session) {
    summaryBox.textContent = "";
    outputPanel.replaceChildren();
    programView.replaceChildren();
    inputSlicePanel.replaceChildren();
    statementsPanel.replaceChildren();
    inputTogglesPanel.replaceChildren();
    forwardOutputPanel.replaceChildren();
    return;
  }

  const stats = session.trace_summary;
  summaryBox.textContent =
    `${stats.assignments} assignments, ` +
    `${stats.loop_iterations} loop iterations, ` +
    `${stats.loop_conditions} loop conditions, ` +
    `branches: ${stats.branch_decisions.join(", ") || "none"}`;

  modeBackward.classList.toggle("active", view.mode === "backward");
  modeForward.classList.toggle("active", view.mode === "forward");
  backwardSection.hidden = view.mode !== "backward";
  forwardSection.hidden = view.mode !== "forward";

  // Output chips: click to keep/drop a variable in the criterion.
  outputPanel.replaceChildren(
    ...view.outputChips.map((chip) => {
      const button = document.createElement("button");
      button.className = chip.kept ? "chip kept" : "chip";
      button.textContent = `${chip.name} = ${chip.display}`;
      button.title = chip.kept
        ? "click to stop explaining this variable"
        : "click to demand an explanation for this variable";
      button.addEventListener("click", () => {
        void controller.toggleCriterion(chip.name);
      });
      return button;
    }),
  );

  programView.replaceChildren(
    ...view.segments.map(({ text, dimmed }) => {
      const span = document.createElement("span");
      span.textContent = text;
      if (dimmed) span.className = "dimmed";
      return span;
    }),
  );

  inputSlicePanel.replaceChildren(
    ...view.inputSliceRows.map(({ name, display }) => {
      const row = document.createElement("div");
      row.className = display === "_" ? "binding hole" : "binding";
      row.textContent = `${name} = ${display}`;
      return row;
    }),
  );

  sliceTextBox.textContent = view.sliceText ?? "";
  sliceTextBox.hidden = !showSliceText.checked;

  statementsPanel.replaceChildren(
    ...view.statements.map(({ text, erased }, index) => {
      const button = document.createElement("button");
      button.className = erased ? "statement erased" : "statement";
      button.textContent = erased ? "_" : text;
      button.addEventListener("click", () => {
        void controller.toggleStatement(index);
      });
      return button;
    }),
  );

  inputTogglesPanel.replaceChildren(
    ...view.inputToggles.map(({ name, value, erased }) => {
      const button = document.createElement("button");
      button.className = erased ? "chip erased" : "chip";
      button.textContent = `${name} = ${erased ? "_" : value}`;
      button.addEventListener("click", () => {
        void controller.toggleInput(name);
      });
      return button;
    }),
  );

  forwardOutputPanel.replaceChildren(
    ...view.forwardOutputRows.map(({ name, display }) => {
      const row = document.createElement("div");
      row.className = display === "_" ? "binding hole" : "binding";
      row.textContent = `${name} = ${display}`;
      return row;
    }),
  );
}

runButton.addEventListener("click", () => {
  const fuel = fuelInput.value ? Number(fuelInput.value) : undefined;
  void controller.run(programInput.value, stateInput.value, fuel);
});
modeBackward.addEventListener("click", () => void controller.setMode("backward"));
modeForward.addEventListener("click", () => void controller.setMode("forward"));
showSliceText.addEventListener("change", () => render(controller.view()));

render(controller.view());
