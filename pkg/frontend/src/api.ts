import type { ExampleSummary, SessionView, TemplateDoc } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) throw new ApiError(resp.status, await resp.text());
  return (await resp.json()) as T;
}

export class Client {
  constructor(private base: string = "") {}

  listExamples(): Promise<ExampleSummary[]> {
    return fetch(`${this.base}/examples`).then((r) => asJson<ExampleSummary[]>(r));
  }

  getTemplate(exampleId: string): Promise<TemplateDoc> {
    return fetch(`${this.base}/examples/${exampleId}/template`).then((r) =>
      asJson<TemplateDoc>(r),
    );
  }

  createSession(exampleId: string): Promise<{ session_id: string }> {
    return fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ example_id: exampleId }),
    }).then((r) => asJson<{ session_id: string }>(r));
  }

  select(sessionId: string, hotspot: number, option: number): Promise<SessionView> {
    return fetch(`${this.base}/sessions/${sessionId}/select`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ hotspot, option }),
    }).then((r) => asJson<SessionView>(r));
  }

  undo(sessionId: string): Promise<SessionView> {
    return fetch(`${this.base}/sessions/${sessionId}/undo`, { method: "POST" }).then(
      (r) => asJson<SessionView>(r),
    );
  }

  view(sessionId: string): Promise<SessionView> {
    return fetch(`${this.base}/sessions/${sessionId}`).then((r) =>
      asJson<SessionView>(r),
    );
  }

  async render(sessionId: string): Promise<string> {
    const resp = await fetch(`${this.base}/sessions/${sessionId}/render`);
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.text();
  }
}
