/** Session controller: wires server state to the view.
 *
 * One request is in flight per session at a time; input is disabled while
 * waiting. The view is always rebuilt from the last server response, never
 * from any client-side computation.
 */

import { ApiError, SessionApi, SessionStateJson } from "./api.js";
import {
  DEFAULT_VIEW,
  renderBadge,
  renderBreadcrumb,
  renderQuiver,
  renderVariables,
  ViewConfig,
} from "./view.js";

export interface AppElements {
  canvas: HTMLElement; // quiver drawing goes here
  panel: HTMLElement; // variables
  breadcrumb: HTMLElement;
  status: HTMLElement; // badge + inline errors
  undoButton: HTMLButtonElement;
}

export class ExplorerApp {
  state: SessionStateJson | null = null;
  busy = false;

  constructor(
    readonly api: SessionApi,
    readonly els: AppElements,
    readonly view: ViewConfig = DEFAULT_VIEW,
  ) {
    this.els.undoButton.addEventListener("click", () => {
      void this.undo();
    });
  }

  get sessionId(): string | null {
    return this.state?.id ?? null;
  }

  async start(body: unknown): Promise<void> {
    const id = await this.api.createSession(body);
    await this.attach(id);
  }

  async attach(id: string): Promise<void> {
    this.state = await this.api.getState(id);
    if (typeof window !== "undefined") {
      window.location.hash = id;
    }
    this.render();
  }

  async clickVertex(vertex: number): Promise<void> {
    if (this.busy || !this.state) {
      return;
    }
    this.busy = true;
    this.setDisabled(true);
    try {
      this.state = await this.api.mutate(this.state.id, vertex);
      this.render();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.render();
        this.showError(`vertex ${vertex} is frozen: ${err.message}`);
      } else if (err instanceof ApiError) {
        this.render();
        this.showError(err.message);
      } else {
        throw err;
      }
    } finally {
      this.busy = false;
      this.setDisabled(false);
    }
  }

  async undo(): Promise<void> {
    if (this.busy || !this.state) {
      return;
    }
    this.busy = true;
    this.setDisabled(true);
    try {
      this.state = await this.api.undo(this.state.id);
      this.render();
    } finally {
      this.busy = false;
      this.setDisabled(false);
    }
  }

  render(): void {
    if (!this.state) {
      return;
    }
    this.els.canvas.replaceChildren(
      renderQuiver(this.state, (v) => void this.clickVertex(v), this.view),
    );
    this.els.panel.replaceChildren(renderVariables(this.state));
    this.els.breadcrumb.replaceChildren(renderBreadcrumb(this.state));
    const badge = renderBadge(this.state);
    this.els.status.replaceChildren(...(badge ? [badge] : []));
  }

  private showError(message: string): void {
    const note = document.createElement("span");
    note.className = "error-note";
    note.textContent = message;
    this.els.status.appendChild(note);
  }

  private setDisabled(disabled: boolean): void {
    this.els.undoButton.disabled = disabled;
    this.els.canvas.classList.toggle("busy", disabled);
  }
}
