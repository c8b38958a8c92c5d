// Wire types for the slice service (schema_version 1).
// States travel as ordered arrays of bindings; a null value is a hole.
// Partial programs travel as concrete syntax with `_` holes.

export interface Binding {
  name: string;
  value: number | null;
}

export interface TraceSummary {
  assignments: number;
  loop_iterations: number;
  loop_conditions: number;
  branch_decisions: boolean[];
}

export interface SessionResponse {
  schema_version: number;
  session_id: string;
  program: string; // canonical rendering; hole spans index into this
  input_state: Binding[];
  output_state: Binding[];
  trace_summary: TraceSummary;
}

export interface Span {
  start: number;
  end: number;
}

export interface BwdResponse {
  schema_version: number;
  program_slice: string;
  input_slice: Binding[];
  holes: Span[];
}

export interface FwdResponse {
  schema_version: number;
  partial_output: Binding[];
}

export interface ErrorBody {
  error: string;
  message?: string;
  line?: number;
  column?: number;
  size?: number;
}
