import type {
  ErrorBody,
  FeedbackDto,
  FinishDto,
  FlowsDto,
  MovePayload,
  PackMetaDto,
  SessionDto,
  StartDto,
  TreeDto,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Chains async tasks so they run strictly one after another, in enqueue
 * order. A failing task rejects its own caller but never stalls the chain:
 * rapid gestures each get exactly one slot, none dropped, none reordered. */
export class RequestQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private pending = 0;

  enqueue<T>(task: () => Promise<T>): Promise<T> {
    this.pending += 1;
    const run = this.tail.then(task);
    this.tail = run.catch(() => undefined).finally(() => {
      this.pending -= 1;
    });
    return run;
  }

  get size(): number {
    return this.pending;
  }
}

export class Client {
  readonly queue = new RequestQueue();

  constructor(private base = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    let resp: Response;
    try {
      resp = await fetch(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, "network", `network failure: ${String(err)}`);
    }
    const data = (await resp.json().catch(() => null)) as T | ErrorBody | null;
    if (!resp.ok) {
      const e = (data ?? {}) as Partial<ErrorBody>;
      throw new ApiError(resp.status, e.code ?? "error", e.message ?? resp.statusText, e.detail);
    }
    return data as T;
  }

  /** Everything flows through one queue: one gesture, one request, in order. */
  private queued<T>(method: string, path: string, body?: unknown): Promise<T> {
    return this.queue.enqueue(() => this.request<T>(method, path, body));
  }

  createPlayer(name: string): Promise<TreeDto> {
    return this.queued("POST", "/players", { name });
  }

  tree(player: string): Promise<TreeDto> {
    return this.queued("GET", `/players/${encodeURIComponent(player)}/tree`);
  }

  start(player: string, puzzleId: string, fresh = false): Promise<StartDto> {
    const body: Record<string, unknown> = { puzzle_id: puzzleId };
    if (fresh) body.fresh = true;
    return this.queued("POST", `/players/${encodeURIComponent(player)}/sessions`, body);
  }

  session(token: string): Promise<SessionDto> {
    return this.queued("GET", `/sessions/${token}`);
  }

  move(token: string, move: MovePayload): Promise<FeedbackDto> {
    return this.queued("POST", `/sessions/${token}/moves`, move);
  }

  flows(token: string): Promise<FlowsDto> {
    return this.queued("GET", `/sessions/${token}/flows`);
  }

  finish(token: string): Promise<FinishDto> {
    return this.queued("POST", `/sessions/${token}/finish`);
  }

  packMeta(): Promise<PackMetaDto> {
    return this.queued("GET", "/packs/current");
  }
}
