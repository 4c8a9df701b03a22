import type { Client } from "./api.js";
import type { SessionView, TemplateDoc } from "./types.js";

export type Listener = (store: TemplateStore) => void;

// UI state is a pure projection of the latest server response: the client
// never decides frequencies or filtering itself. Mutations are serialized;
// clicks arriving while one is in flight are queued.
export class TemplateStore {
  view: SessionView | null = null;
  lastError: string | null = null;
  hideMisc = false;
  shownCounterpart: string | null = null;

  private listeners: Listener[] = [];
  private queue: (() => Promise<void>)[] = [];
  private busy = false;

  constructor(
    public readonly client: Client,
    public readonly template: TemplateDoc,
    public readonly sessionId: string,
  ) {}

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this);
  }

  private enqueue(work: () => Promise<void>): Promise<void> {
    return new Promise((resolve) => {
      this.queue.push(async () => {
        await work();
        resolve();
      });
      void this.pump();
    });
  }

  private async pump(): Promise<void> {
    if (this.busy) return;
    const next = this.queue.shift();
    if (!next) return;
    this.busy = true;
    try {
      await next();
    } finally {
      this.busy = false;
      void this.pump();
    }
  }

  async refresh(): Promise<void> {
    this.view = await this.client.view(this.sessionId);
    this.emit();
  }

  select(hotspot: number, option: number): Promise<void> {
    return this.enqueue(async () => {
      try {
        this.view = await this.client.select(this.sessionId, hotspot, option);
        this.lastError = null;
      } catch (err) {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
      this.emit();
    });
  }

  undo(): Promise<void> {
    return this.enqueue(async () => {
      try {
        this.view = await this.client.undo(this.sessionId);
        this.lastError = null;
      } catch (err) {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
      this.emit();
    });
  }

  async copyResult(write: (text: string) => Promise<void>): Promise<string> {
    const text = await this.client.render(this.sessionId);
    await write(text);
    return text;
  }

  chosenOption(hotspot: number): number {
    if (!this.view) return 0;
    return this.view.chosen[String(hotspot)] ?? 0;
  }

  isAutoChosen(hotspot: number, option: number): boolean {
    if (!this.view) return false;
    return this.view.auto_chosen.some(([h, o]) => h === hotspot && o === option);
  }

  relativeFrequency(hotspot: number, option: number): number {
    if (!this.view) {
      return this.template.hotspots[hotspot].options[option].frequency;
    }
    return this.view.frequencies[hotspot][option];
  }

  activeCounterparts(): string[] {
    if (!this.view) return this.template.counterparts.map((c) => c.id);
    return this.view.active_counterparts;
  }

  toggleMisc(): void {
    this.hideMisc = !this.hideMisc;
    this.emit();
  }

  showCounterpart(id: string | null): void {
    this.shownCounterpart = id;
    this.emit();
  }
}
