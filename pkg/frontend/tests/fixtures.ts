// Canned service responses for the two-branch increment example, byte for
// byte what the real service returns for these requests.

import type { Binding, BwdResponse, SessionResponse } from "../src/schema";

export const PROGRAM_TEXT =
  "if (y = 1) then { y := x + 1 } else { y := y + 1 } ; z := z + 1";

export const SESSION: SessionResponse = {
  schema_version: 1,
  session_id: "ab12cd34ef56ab78",
  program: PROGRAM_TEXT,
  input_state: [
    { name: "x", value: 1 },
    { name: "y", value: 0 },
    { name: "z", value: 2 },
  ],
  output_state: [
    { name: "x", value: 1 },
    { name: "y", value: 1 },
    { name: "z", value: 3 },
  ],
  trace_summary: {
    assignments: 2,
    loop_iterations: 0,
    loop_conditions: 0,
    branch_decisions: [false],
  },
};

export const SLICE_FOR_Y: BwdResponse = {
  schema_version: 1,
  program_slice: "if (y = 1) then { _ } else { y := y + 1 } ; _",
  input_slice: [
    { name: "x", value: null },
    { name: "y", value: 0 },
    { name: "z", value: null },
  ],
  holes: [
    { start: 18, end: 28 },
    { start: 53, end: 63 },
  ],
};

export const SLICE_FOR_Z: BwdResponse = {
  schema_version: 1,
  program_slice: "_ ; z := z + 1",
  input_slice: [
    { name: "x", value: null },
    { name: "y", value: null },
    { name: "z", value: 2 },
  ],
  holes: [{ start: 0, end: 50 }],
};

export const SLICE_FOR_NOTHING: BwdResponse = {
  schema_version: 1,
  program_slice: "_",
  input_slice: [
    { name: "x", value: null },
    { name: "y", value: null },
    { name: "z", value: null },
  ],
  holes: [{ start: 0, end: PROGRAM_TEXT.length }],
};

export function keptNames(criterion: Binding[]): string[] {
  return criterion.filter((b) => b.value !== null).map((b) => b.name);
}
