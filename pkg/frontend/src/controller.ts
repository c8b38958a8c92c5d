// Session and interaction state.  The controller owns the mutable bits
// (current session, selections, latest slice) and exposes an immutable
// view; the DOM layer just re-renders on every change notification.
//
// Slice requests race the user: only the response to the *latest* request
// per direction may update the view, older responses are discarded.

import type { SliceApi } from "./api";
import { ServiceError } from "./api";
import type { BwdResponse, SessionResponse, Span } from "./schema";
import {
  criterionBindings,
  dimSegments,
  forwardProgram,
  forwardState,
  statementSpans,
  stateRows,
  toggleName,
  type Kept,
  type Segment,
  type StateRow,
} from "./model";

export type Mode = "backward" | "forward";

export interface ErrorView {
  message: string;
  line?: number;
  column?: number;
  fuelExhausted: boolean;
}

export interface OutputChip extends StateRow {
  kept: boolean;
}

export interface ExplorerView {
  session: SessionResponse | null;
  error: ErrorView | null;
  busy: boolean;
  mode: Mode;
  // Backward mode.
  outputChips: OutputChip[];
  segments: Segment[];
  inputSliceRows: StateRow[];
  sliceText: string | null;
  // Forward mode.
  statements: { span: Span; text: string; erased: boolean }[];
  inputToggles: { name: string; value: number; erased: boolean }[];
  forwardOutputRows: StateRow[];
}

const EMPTY_VIEW: ExplorerView = {
  session: null,
  error: null,
  busy: false,
  mode: "backward",
  outputChips: [],
  segments: [],
  inputSliceRows: [],
  sliceText: null,
  statements: [],
  inputToggles: [],
  forwardOutputRows: [],
};

export class ExplorerController {
  private session: SessionResponse | null = null;
  private error: ErrorView | null = null;
  private busy = false;
  private mode: Mode = "backward";
  private kept: Kept = new Set();
  private slice: BwdResponse | null = null;
  private erasedStatements: ReadonlySet<number> = new Set();
  private erasedInputs: ReadonlySet<string> = new Set();
  private forwardOutput: StateRow[] = [];
  private bwdTicket = 0;
  private fwdTicket = 0;

  constructor(
    private readonly api: SliceApi,
    private readonly onChange: (view: ExplorerView) => void = () => {},
  ) {}

  view(): ExplorerView {
    const session = this.session;
    if (!session) {
      return { ...EMPTY_VIEW, error: this.error, busy: this.busy };
    }
    const statements = statementSpans(session.program);
    return {
      session,
      error: this.error,
      busy: this.busy,
      mode: this.mode,
      outputChips: stateRows(session.output_state).map((row) => ({
        ...row,
        kept: this.kept.has(row.name),
      })),
      segments: this.slice
        ? dimSegments(session.program, this.slice.holes)
        : [{ text: session.program, dimmed: false }],
      inputSliceRows: this.slice ? stateRows(this.slice.input_slice) : [],
      sliceText: this.slice ? this.slice.program_slice : null,
      statements: statements.map((span, index) => ({
        span,
        text: session.program.slice(span.start, span.end),
        erased: this.erasedStatements.has(index),
      })),
      inputToggles: session.input_state.map(({ name, value }) => ({
        name,
        value: value as number,
        erased: this.erasedInputs.has(name),
      })),
      forwardOutputRows: this.forwardOutput,
    };
  }

  async run(program: string, state: string, fuel?: number): Promise<void> {
    this.busy = true;
    this.error = null;
    this.notify();
    try {
      this.session = await this.api.createSession(program, state, fuel);
    } catch (err) {
      this.session = null;
      this.error = toErrorView(err);
      this.busy = false;
      this.notify();
      return;
    }
    this.kept = new Set();
    this.slice = null;
    this.erasedStatements = new Set();
    this.erasedInputs = new Set();
    this.forwardOutput = [];
    this.busy = false;
    // An empty criterion is still a slice: everything dims until the
    // user keeps a variable.
    await this.refreshBackward();
  }

  async toggleCriterion(name: string): Promise<void> {
    if (!this.session) return;
    this.kept = toggleName(this.kept, name);
    await this.refreshBackward();
  }

  async setMode(mode: Mode): Promise<void> {
    this.mode = mode;
    this.notify();
    if (mode === "forward" && this.session) {
      await this.refreshForward();
    }
  }

  async toggleStatement(index: number): Promise<void> {
    if (!this.session) return;
    const next = new Set(this.erasedStatements);
    if (next.has(index)) next.delete(index);
    else next.add(index);
    this.erasedStatements = next;
    await this.refreshForward();
  }

  async toggleInput(name: string): Promise<void> {
    if (!this.session) return;
    const next = new Set(this.erasedInputs);
    if (next.has(name)) next.delete(name);
    else next.add(name);
    this.erasedInputs = next;
    await this.refreshForward();
  }

  private async refreshBackward(): Promise<void> {
    const session = this.session;
    if (!session) return;
    const ticket = ++this.bwdTicket;
    const criterion = criterionBindings(session.output_state, this.kept);
    try {
      const slice = await this.api.backwardSlice(session.session_id, criterion);
      if (ticket !== this.bwdTicket) return; // a newer click superseded us
      this.slice = slice;
      this.error = null;
    } catch (err) {
      if (ticket !== this.bwdTicket) return;
      this.error = toErrorView(err);
    }
    this.notify();
  }

  private async refreshForward(): Promise<void> {
    const session = this.session;
    if (!session) return;
    const ticket = ++this.fwdTicket;
    const statements = statementSpans(session.program);
    const partialProgram = forwardProgram(
      session.program,
      statements,
      this.erasedStatements,
    );
    const partialState = forwardState(session.input_state, this.erasedInputs);
    try {
      const result = await this.api.forwardSlice(
        session.session_id,
        partialProgram,
        partialState,
      );
      if (ticket !== this.fwdTicket) return;
      this.forwardOutput = stateRows(result.partial_output);
      this.error = null;
    } catch (err) {
      if (ticket !== this.fwdTicket) return;
      this.error = toErrorView(err);
    }
    this.notify();
  }

  private notify(): void {
    this.onChange(this.view());
  }
}

function toErrorView(err: unknown): ErrorView {
  if (err instanceof ServiceError) {
    return {
      message: err.body.message ?? err.body.error,
      line: err.body.line,
      column: err.body.column,
      fuelExhausted: err.body.error === "fuel_exhausted",
    };
  }
  return { message: String(err), fuelExhausted: false };
}
