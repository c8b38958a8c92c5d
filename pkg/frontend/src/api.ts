import type {
  Binding,
  BwdResponse,
  ErrorBody,
  FwdResponse,
  SessionResponse,
} from "./schema";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: ErrorBody,
  ) {
    super(body.message ?? body.error);
  }
}

export interface SliceApi {
  createSession(
    program: string,
    state: string,
    fuel?: number,
  ): Promise<SessionResponse>;
  backwardSlice(sessionId: string, criterion: Binding[]): Promise<BwdResponse>;
  forwardSlice(
    sessionId: string,
    partialProgram: string,
    partialState: Binding[],
  ): Promise<FwdResponse>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** The UI never computes slices itself; every answer comes from here. */
export function makeClient(baseUrl = "", fetchFn?: FetchLike): SliceApi {
  const doFetch: FetchLike = fetchFn ?? ((input, init) => fetch(input, init));

  async function post<T>(path: string, body: unknown): Promise<T> {
    const response = await doFetch(baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ServiceError(response.status, payload as ErrorBody);
    }
    return payload as T;
  }

  return {
    createSession(program, state, fuel) {
      const body: Record<string, unknown> = { program, state };
      if (fuel !== undefined) body.fuel = fuel;
      return post<SessionResponse>("/sessions", body);
    },
    backwardSlice(sessionId, criterion) {
      return post<BwdResponse>(`/sessions/${sessionId}/bwd`, { criterion });
    },
    forwardSlice(sessionId, partialProgram, partialState) {
      return post<FwdResponse>(`/sessions/${sessionId}/fwd`, {
        partial_program: partialProgram,
        partial_state: partialState,
      });
    },
  };
}
